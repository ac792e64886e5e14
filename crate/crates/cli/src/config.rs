//! Flat `key = value` configuration files.
//!
//! Lines starting with `#` (or the tail of any line after `#`) are comments.
//! Vectors are comma-separated scalars.

use std::collections::BTreeMap;

use affine_mechanics::spacetime::{
    g_apply, Event, FourCovector, Frame, SpatialCovector, SpatialVector,
};
use affine_mechanics::{Mass, Potential};
use thiserror::Error;

const KEYS: [&str; 13] = [
    "mass",
    "potential.kind",
    "potential.k",
    "potential.kappa",
    "potential.center",
    "frame",
    "x0",
    "v0",
    "p0",
    "dt",
    "steps",
    "seed",
    "tol",
];

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error("key `{key}`: {reason}")]
    InvalidValue { key: &'static str, reason: String },
    #[error("give exactly one of `v0` and `p0`")]
    InitialCondition,
}

/// Initial spatial data, relative to the configured frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Initial {
    Velocity(SpatialVector),
    Momentum(SpatialCovector),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    pub mass: Mass,
    pub potential: Potential,
    pub frame: Frame,
    pub x0: Event,
    pub initial: Initial,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub seed: u64,
    pub tol: f64,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let entries = Entries::read(text)?;
        let mass = entries.scalar("mass")?;
        let mass = Mass::new(mass).map_err(|e| invalid("mass", e))?;
        let potential = entries.potential()?;
        let frame = match entries.optional::<3>("frame")? {
            Some(b) => Frame::from_boost(SpatialVector::from_array(b)),
            None => Frame::from_boost(SpatialVector::ZERO),
        };
        let x0 = Event::from_array(entries.vector::<4>("x0")?);
        let initial = match (entries.optional::<3>("v0")?, entries.optional::<3>("p0")?) {
            (Some(v), None) => Initial::Velocity(SpatialVector::from_array(v)),
            (None, Some(p)) => Initial::Momentum(SpatialCovector::from_array(p)),
            _ => return Err(ConfigError::InitialCondition),
        };
        let dt = match entries.get("dt") {
            Some(_) => {
                let dt = entries.scalar("dt")?;
                if !(dt > 0.0) || !dt.is_finite() {
                    return Err(invalid("dt", "must be positive and finite"));
                }
                Some(dt)
            }
            None => None,
        };
        let steps = match entries.get("steps") {
            Some(raw) => {
                let n: usize = raw
                    .parse()
                    .map_err(|_| invalid("steps", format!("`{raw}` is not a count")))?;
                if n == 0 {
                    return Err(invalid("steps", "must be at least 1"));
                }
                Some(n)
            }
            None => None,
        };
        let seed = match entries.get("seed") {
            Some(raw) => raw
                .parse()
                .map_err(|_| invalid("seed", format!("`{raw}` is not an integer")))?,
            None => DEFAULT_SEED,
        };
        let tol = match entries.get("tol") {
            Some(_) => {
                let tol = entries.scalar("tol")?;
                if !(tol > 0.0) || !tol.is_finite() {
                    return Err(invalid("tol", "must be positive and finite"));
                }
                tol
            }
            None => DEFAULT_TOL,
        };
        Ok(Config {
            mass,
            potential,
            frame,
            x0,
            initial,
            dt,
            steps,
            seed,
            tol,
        })
    }

    /// The integration step and count, which only trajectory commands need.
    pub fn integration(&self) -> Result<(f64, usize), ConfigError> {
        let dt = self.dt.ok_or(ConfigError::MissingKey("dt"))?;
        let steps = self.steps.ok_or(ConfigError::MissingKey("steps"))?;
        Ok((dt, steps))
    }

    /// Spatial frame momentum at `x0`.
    pub fn initial_momentum(&self) -> SpatialCovector {
        match self.initial {
            Initial::Velocity(v) => g_apply(v) * self.mass.get(),
            Initial::Momentum(p) => p,
        }
    }
}

fn invalid(key: &'static str, reason: impl ToString) -> ConfigError {
    ConfigError::InvalidValue {
        key,
        reason: reason.to_string(),
    }
}

struct Entries(BTreeMap<&'static str, String>);

impl Entries {
    fn read(text: &str) -> Result<Entries, ConfigError> {
        let mut map = BTreeMap::new();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    text: content.to_string(),
                });
            };
            let key = key.trim();
            let Some(known) = KEYS.iter().find(|k| **k == key) else {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                });
            };
            if map.insert(*known, value.trim().to_string()).is_some() {
                return Err(ConfigError::DuplicateKey {
                    line,
                    key: key.to_string(),
                });
            }
        }
        Ok(Entries(map))
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn scalar(&self, key: &'static str) -> Result<f64, ConfigError> {
        let raw = self.get(key).ok_or(ConfigError::MissingKey(key))?;
        parse_scalar(key, raw)
    }

    fn vector<const N: usize>(&self, key: &'static str) -> Result<[f64; N], ConfigError> {
        self.optional(key)?.ok_or(ConfigError::MissingKey(key))
    }

    fn optional<const N: usize>(&self, key: &'static str) -> Result<Option<[f64; N]>, ConfigError> {
        let Some(raw) = self.get(key) else {
            return Ok(None);
        };
        let parts = raw
            .split(',')
            .map(|s| parse_scalar(key, s.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        let array: [f64; N] = parts.try_into().map_err(|p: Vec<f64>| {
            invalid(key, format!("expected {N} components, found {}", p.len()))
        })?;
        Ok(Some(array))
    }

    fn potential(&self) -> Result<Potential, ConfigError> {
        let kind = self
            .get("potential.kind")
            .ok_or(ConfigError::MissingKey("potential.kind"))?;
        let allowed: &[&str] = match kind {
            "zero" => &[],
            "uniform" => &["potential.k"],
            "harmonic" => &["potential.kappa", "potential.center"],
            other => return Err(invalid("potential.kind", format!("unknown kind `{other}`"))),
        };
        for key in ["potential.k", "potential.kappa", "potential.center"] {
            if self.get(key).is_some() && !allowed.contains(&key) {
                return Err(invalid(
                    "potential.kind",
                    format!("`{key}` is not used by `{kind}`"),
                ));
            }
        }
        match kind {
            "zero" => Ok(Potential::Zero),
            "uniform" => Ok(Potential::uniform(FourCovector::from_array(
                self.vector::<4>("potential.k")?,
            ))),
            _ => {
                let kappa = self.scalar("potential.kappa")?;
                let center = Event::from_array(self.vector::<4>("potential.center")?);
                Potential::harmonic(kappa, center).map_err(|e| invalid("potential.kappa", e))
            }
        }
    }
}

fn parse_scalar(key: &'static str, raw: &str) -> Result<f64, ConfigError> {
    let x: f64 = raw
        .parse()
        .map_err(|_| invalid(key, format!("`{raw}` is not a number")))?;
    if !x.is_finite() {
        return Err(invalid(key, "must be finite"));
    }
    Ok(x)
}
