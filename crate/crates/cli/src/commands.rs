use std::io::{self, Write};
use std::path::{Path, PathBuf};

use affine_mechanics::affine_values::UniversalDynamics;
use affine_mechanics::homogeneous::HomogeneousDynamics;
use affine_mechanics::inhomogeneous::{FrameDynamics, InhomState, TrajectoryPoint};
use affine_mechanics::spacetime::{embed, g_apply, Frame, SpatialCovector, SpatialVector};
use affine_mechanics::verify::{run_all, VerifyConfig};
use affine_mechanics::MechanicsError;
use thiserror::Error;

use crate::config::{Config, ConfigError, Initial};

pub const CSV_HEADER: [&str; 10] = [
    "step",
    "t",
    "x",
    "y",
    "z",
    "px",
    "py",
    "pz",
    "energy",
    "shell_residual",
];

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("numeric failure: {0}")]
    Numeric(MechanicsError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => EXIT_NUMERIC,
            _ => EXIT_INVALID,
        }
    }
}

impl From<MechanicsError> for CliError {
    fn from(e: MechanicsError) -> Self {
        match e {
            MechanicsError::NonFinite { .. } => CliError::Numeric(e),
            other => CliError::Argument(other.to_string()),
        }
    }
}

pub fn load_config(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    Ok(Config::parse(&text)?)
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn run(
    config: &Config,
    frame: Frame,
    p0: SpatialCovector,
) -> Result<(FrameDynamics, Vec<TrajectoryPoint>), CliError> {
    let (dt, steps) = config.integration()?;
    let dynamics = FrameDynamics::new(frame, config.mass, config.potential);
    let trajectory = dynamics.integrate(
        InhomState {
            x: config.x0,
            p: p0,
        },
        dt,
        steps,
    )?;
    Ok((dynamics, trajectory))
}

fn write_csv(
    path: &Path,
    dynamics: &FrameDynamics,
    trajectory: &[TrajectoryPoint],
) -> Result<(), CliError> {
    let fail = |e: &dyn std::fmt::Display| CliError::Write {
        path: path.into(),
        message: e.to_string(),
    };
    let lift = HomogeneousDynamics::new(dynamics.frame, dynamics.mass, dynamics.potential);
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| fail(&e))?;
    writer.write_record(CSV_HEADER).map_err(|e| fail(&e))?;
    for point in trajectory {
        let x = point.state.x;
        let xdot = dynamics.field(point.state).xdot.as_vector();
        let residual = lift.mass_shell_residual(x, lift.legendre(x, xdot)?);
        let [px, py, pz] = point.state.p.to_array();
        let row = [
            point.time,
            x.x,
            x.y,
            x.z,
            px,
            py,
            pz,
            point.energy,
            residual,
        ];
        let mut record = vec![point.step.to_string()];
        record.extend(row.into_iter().map(num));
        writer.write_record(&record).map_err(|e| fail(&e))?;
    }
    writer.flush().map_err(|e| fail(&e))
}

pub fn simulate(config_path: &Path, out: &Path) -> Result<u8, CliError> {
    let config = load_config(config_path)?;
    let (dynamics, trajectory) = run(&config, config.frame, config.initial_momentum())?;
    write_csv(out, &dynamics, &trajectory)?;
    Ok(EXIT_OK)
}

/// Path of the boosted trajectory: `name_boosted.ext` next to `out`.
pub fn boosted_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}_boosted.{}", ext.to_string_lossy()),
        None => format!("{stem}_boosted"),
    };
    out.with_file_name(name)
}

/// Runs the configured motion in `u` and in `u + boost` and compares world lines.
///
/// `corrupt` flips the sign of the momentum shift, a negative control for the comparison.
pub fn boost(
    config_path: &Path,
    boost: SpatialVector,
    out: &Path,
    corrupt: bool,
) -> Result<u8, CliError> {
    let config = load_config(config_path)?;
    let p = config.initial_momentum();
    let shift = g_apply(boost) * config.mass.get();
    let boosted_p = if corrupt { p + shift } else { p - shift };
    let (rest, rest_traj) = run(&config, config.frame, p)?;
    let (moving, moving_traj) = run(&config, config.frame + boost, boosted_p)?;
    write_csv(out, &rest, &rest_traj)?;
    write_csv(&boosted_path(out), &moving, &moving_traj)?;
    let discrepancy = rest_traj
        .iter()
        .zip(&moving_traj)
        .map(|(a, b)| (a.state.x - b.state.x).max_abs())
        .fold(0.0, f64::max);
    println!("max_event_discrepancy={}", num(discrepancy));
    Ok(if discrepancy <= config.tol {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

pub fn verify(
    trials: usize,
    seed: u64,
    tol: Option<f64>,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    if trials == 0 {
        return Err(CliError::Argument("trials must be at least 1".into()));
    }
    if let Some(t) = tol {
        if !(t > 0.0) || !t.is_finite() {
            return Err(CliError::Argument(format!(
                "tol must be positive and finite, got {t}"
            )));
        }
    }
    let reports = run_all(&VerifyConfig { trials, seed, tol });
    let stdout_error = |e: io::Error| CliError::Write {
        path: "stdout".into(),
        message: e.to_string(),
    };
    for r in &reports {
        writeln!(out, "{r}").map_err(stdout_error)?;
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    writeln!(out, "passed {passed}/{}", reports.len()).map_err(stdout_error)?;
    Ok(if passed == reports.len() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

pub fn legendre(config_path: &Path, out: &mut impl Write) -> Result<u8, CliError> {
    let config = load_config(config_path)?;
    let Initial::Velocity(v0) = config.initial else {
        return Err(CliError::Argument("legendre needs `v0`, not `p0`".into()));
    };
    let velocity = config.frame.as_vector() + embed(v0);
    let frame = HomogeneousDynamics::new(config.frame, config.mass, config.potential);
    let p = frame.legendre(config.x0, velocity)?;
    let class = UniversalDynamics::new(config.mass, config.potential).legendre_in(
        config.frame,
        config.x0,
        velocity,
    )?;
    let residual = frame.mass_shell_residual(config.x0, p);
    let constraint = class.psi() + config.potential.value(config.x0);
    let join = |xs: [f64; 4]| xs.map(num).join(",");
    let stdout_error = |e: io::Error| CliError::Write {
        path: "stdout".into(),
        message: e.to_string(),
    };
    writeln!(out, "frame_momentum={}", join(p.to_array())).map_err(stdout_error)?;
    writeln!(
        out,
        "phase_class_reference={}",
        join(class.reference_momentum().to_array())
    )
    .map_err(stdout_error)?;
    writeln!(out, "mass_shell_residual={}", num(residual)).map_err(stdout_error)?;
    writeln!(out, "psi_plus_phi={}", num(constraint)).map_err(stdout_error)?;
    Ok(if residual.abs() <= config.tol {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}
