#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use affine_mechanics::spacetime::SpatialVector;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "affmech",
    version,
    about = "Frame-independent Newtonian particle mechanics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the configured motion and write a CSV trajectory.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Integrate in the configured frame and in a boosted frame, then compare world lines.
    Boost {
        #[arg(long)]
        config: PathBuf,
        /// Spatial boost `bx,by,bz` added to the configured frame.
        #[arg(long, value_parser = parse_boost, allow_hyphen_values = true)]
        boost: SpatialVector,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, hide = true)]
        corrupt_momentum: bool,
    },
    /// Run every property suite and print one line per property.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override the threshold of every error-bounded property.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Print the Legendre image of the configured initial velocity.
    Legendre {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_boost(s: &str) -> Result<SpatialVector, String> {
    let parts = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{p}` is not a number"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let [x, y, z]: [f64; 3] = parts
        .try_into()
        .map_err(|_| "expected three comma-separated scalars".to_string())?;
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err("components must be finite".into());
    }
    Ok(SpatialVector::new(x, y, z))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    let result = match cli.command {
        Command::Simulate { config, out } => commands::simulate(&config, &out),
        Command::Boost {
            config,
            boost,
            out,
            corrupt_momentum,
        } => commands::boost(&config, boost, &out, corrupt_momentum),
        Command::Verify { trials, seed, tol } => commands::verify(trials, seed, tol, &mut stdout),
        Command::Legendre { config } => commands::legendre(&config, &mut stdout),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
