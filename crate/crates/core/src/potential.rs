//! Scalar potentials `phi: N -> R` with analytic differentials.

use crate::error::{MechanicsError, Result};
use crate::spacetime::{
    g_apply, iota_star, iota_u, iota_u_star, pair, Event, FourCovector, SpatialCovector, ORIGIN,
    U_REF,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Potential {
    Zero,
    /// `phi(x) = <k, x - ORIGIN>`. The time component of `k` may be nonzero.
    Uniform {
        k: FourCovector,
    },
    /// `phi(x) = kappa/2 |s|^2` with `s = iota_{U_REF}(x - center)`; static in the chart rest frame.
    Harmonic {
        kappa: f64,
        center: Event,
    },
}

impl Potential {
    pub fn uniform(k: FourCovector) -> Self {
        Potential::Uniform { k }
    }

    pub fn harmonic(kappa: f64, center: Event) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(MechanicsError::NonPositiveStiffness(kappa));
        }
        Ok(Potential::Harmonic { kappa, center })
    }

    pub fn value(&self, x: Event) -> f64 {
        match *self {
            Potential::Zero => 0.0,
            Potential::Uniform { k } => pair(k, x - ORIGIN),
            Potential::Harmonic { kappa, center } => {
                let s = iota_u(U_REF, x - center);
                0.5 * kappa * g_apply(s).apply(s)
            }
        }
    }

    /// The full differential `d phi(x)` in `V*`.
    pub fn differential(&self, x: Event) -> FourCovector {
        match *self {
            Potential::Zero => FourCovector::ZERO,
            Potential::Uniform { k } => k,
            Potential::Harmonic { kappa, center } => {
                let s = iota_u(U_REF, x - center);
                iota_u_star(U_REF, g_apply(s) * kappa)
            }
        }
    }

    /// Spatial differential `d_s phi(x) = iota*(d phi(x))`.
    pub fn spatial_differential(&self, x: Event) -> SpatialCovector {
        iota_star(self.differential(x))
    }
}
