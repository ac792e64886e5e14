use crate::error::{MechanicsError, Result};

/// A strictly positive particle mass.
///
/// The affine value spaces `W` and `P` are built per mass, so elements of
/// those spaces carry their `Mass` and binary operations check that they agree.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Mass(f64);

impl Mass {
    pub fn new(m: f64) -> Result<Self> {
        if m > 0.0 && m.is_finite() {
            Ok(Mass(m))
        } else {
            Err(MechanicsError::NonPositiveMass(m))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    pub(crate) fn ensure_same(self, other: Mass) -> Result<()> {
        if self.0 == other.0 {
            Ok(())
        } else {
            Err(MechanicsError::MassMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}
