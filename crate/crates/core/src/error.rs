use thiserror::Error;

/// Errors raised by the mechanics constructions.
#[derive(Error, Debug, Clone, Copy, PartialEq)]
pub enum MechanicsError {
    #[error("mass must be strictly positive, got {0}")]
    NonPositiveMass(f64),

    #[error("frame must satisfy <tau, u> = 1, got time component {0}")]
    InvalidFrame(f64),

    #[error("velocity is outside the future cone: <tau, v> = {0} must exceed 1e-12")]
    OutsideFutureCone(f64),

    #[error("fiber parameter must be strictly positive, got {0}")]
    NonPositiveFiber(f64),

    #[error("tolerance must be strictly positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("harmonic stiffness must be strictly positive, got {0}")]
    NonPositiveStiffness(f64),

    #[error("time step must be strictly positive, got {0}")]
    NonPositiveStep(f64),

    #[error("at least one integration step is required")]
    NoSteps,

    #[error("state became non-finite at step {step}")]
    NonFinite { step: usize },

    #[error("mass contexts differ: {left} vs {right}")]
    MassMismatch { left: f64, right: f64 },

    #[error("elements lie in different fibers (projections differ by {0:e})")]
    FiberMismatch(f64),

    #[error("point is off the mass shell: residual {0:e}")]
    OffShell(f64),
}

pub type Result<T> = std::result::Result<T, MechanicsError>;
