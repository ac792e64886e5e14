//! Frame-independent objects built from affine values.
//!
//! Changing the inertial frame from `u` to `u'` shifts lagrangian values by
//! `m <sigma(u', u), v>` and momenta by `m sigma(u', u)`, where
//! `sigma(u', u) = iota*_{(u+u')/2} g(u' - u)` is an antisymmetric cocycle.
//! Quotienting by these shifts gives
//!
//! * `W`, classes `[u, v, r]` of frame/velocity/value triples. It is a vector
//!   space with zero `[u, 0, 0]` and distinguished element `[u, 0, -1]`, and
//!   the frame-dependent lagrangians glue to one section of `N x W -> N x V`;
//! * `P`, classes `[u, p]`. It is an affine space over `V*`, the frame-free
//!   phase space, and the Legendre maps of all frames glue into one map into it.
//!
//! Every class is stored by its representative at the chart frame [`U_REF`], so
//! equality of classes is equality of stored components. Use
//! [`WElement::representative`] and [`PElement::representative`] to read a
//! class in another frame.

use crate::error::{MechanicsError, Result};
use crate::homogeneous::{check_tolerance, future_time_component, HomogeneousDynamics};
use crate::mass::Mass;
use crate::potential::Potential;
use crate::spacetime::{
    g_apply, g_prime_apply, iota_u_star, pair, Event, FourCovector, FourVector, Frame, U_REF,
};

/// Projections of two fiber points must agree this closely in [`WElement::fiber_difference`].
pub const FIBER_TOLERANCE: f64 = 1e-12;

/// The cocycle `sigma(u1, u2) = iota*_{(u1+u2)/2} g(u1 - u2)`.
pub fn sigma(u1: Frame, u2: Frame) -> FourCovector {
    iota_u_star(u1.midpoint(u2), g_apply(u1 - u2))
}

/// Frame transport of momenta, `p -> p + m sigma(u1, u2)`. Carries `K_{m,u1}` onto `K_{m,u2}`.
pub fn phi_map(mass: Mass, u1: Frame, u2: Frame, p: FourCovector) -> FourCovector {
    p + sigma(u1, u2) * mass.get()
}

/// An element of `W`, an affine lagrangian value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WElement {
    mass: Mass,
    v: FourVector,
    r: f64,
}

impl WElement {
    /// The class of the triple `(u, v, r)`.
    pub fn new(mass: Mass, u: Frame, v: FourVector, r: f64) -> Self {
        let r = r + mass.get() * pair(sigma(u, U_REF), v);
        WElement { mass, v, r }
    }

    pub fn zero(mass: Mass) -> Self {
        WElement {
            mass,
            v: FourVector::ZERO,
            r: 0.0,
        }
    }

    /// The distinguished element `[u, 0, -1]`.
    pub fn one(mass: Mass) -> Self {
        WElement {
            mass,
            v: FourVector::ZERO,
            r: -1.0,
        }
    }

    pub fn mass(&self) -> Mass {
        self.mass
    }

    /// The canonical projection `W -> V`.
    pub fn zeta(&self) -> FourVector {
        self.v
    }

    /// Value component of the representative at the chart frame.
    pub fn reference_value(&self) -> f64 {
        self.r
    }

    /// The representative `(v, r_u)` of this class at frame `u`.
    pub fn representative(&self, u: Frame) -> (FourVector, f64) {
        (
            self.v,
            self.r + self.mass.get() * pair(sigma(U_REF, u), self.v),
        )
    }

    pub fn checked_add(self, other: WElement) -> Result<WElement> {
        self.mass.ensure_same(other.mass)?;
        Ok(WElement {
            mass: self.mass,
            v: self.v + other.v,
            r: self.r + other.r,
        })
    }

    pub fn scale(self, lambda: f64) -> WElement {
        WElement {
            mass: self.mass,
            v: self.v * lambda,
            r: self.r * lambda,
        }
    }

    /// The unique `lambda` with `self = other + lambda * one`.
    pub fn fiber_difference(self, other: WElement) -> Result<f64> {
        self.mass.ensure_same(other.mass)?;
        let gap = (self.v - other.v).max_abs();
        if !(gap <= FIBER_TOLERANCE) {
            return Err(MechanicsError::FiberMismatch(gap));
        }
        Ok(other.r - self.r)
    }

    /// The affine function `f_w([u, p]) = <p, v> - r` on `P`.
    pub fn affine_function(self, point: PElement) -> Result<f64> {
        self.mass.ensure_same(point.mass)?;
        Ok(pair(point.p, self.v) - self.r)
    }

    /// Largest componentwise difference between stored representatives.
    pub fn distance(&self, other: &WElement) -> f64 {
        (self.v - other.v).max_abs().max((self.r - other.r).abs())
    }
}

/// A point of the affine phase space `P`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PElement {
    mass: Mass,
    p: FourCovector,
}

impl PElement {
    /// The class of `(u, p)`.
    pub fn new(mass: Mass, u: Frame, p: FourCovector) -> Self {
        PElement {
            mass,
            p: phi_map(mass, u, U_REF, p),
        }
    }

    pub fn mass(&self) -> Mass {
        self.mass
    }

    /// Momentum representing this class at the chart frame.
    pub fn reference_momentum(&self) -> FourCovector {
        self.p
    }

    /// The momentum representing this class at frame `u`.
    pub fn representative(&self, u: Frame) -> FourCovector {
        phi_map(self.mass, U_REF, u, self.p)
    }

    /// Affine action of `V*`: `[u, p] + pi = [u, p + pi]`.
    pub fn translate(self, pi: FourCovector) -> PElement {
        PElement {
            mass: self.mass,
            p: self.p + pi,
        }
    }

    /// `Psi_m([u, p]) = (1/2m) <p, g'(p)> + <p, u>`.
    pub fn psi(&self) -> f64 {
        pair(self.p, g_prime_apply(self.p)) / (2.0 * self.mass.get())
            + pair(self.p, U_REF.as_vector())
    }

    /// The affine pairing `<[u, p], v> = [u, v, <p, v>]` with values in `W`.
    pub fn pairing(&self, v: FourVector) -> WElement {
        WElement {
            mass: self.mass,
            v,
            r: pair(self.p, v),
        }
    }

    pub fn distance(&self, other: &PElement) -> f64 {
        (self.p - other.p).max_abs()
    }
}

/// A vector tangent to `N x P`: `(x, P, v, a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentNP {
    pub x: Event,
    pub p: PElement,
    pub v: FourVector,
    pub a: FourCovector,
}

/// A covector on `N x P`: `(x, P, a, v)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CotangentNP {
    pub x: Event,
    pub p: PElement,
    pub a: FourCovector,
    pub v: FourVector,
}

/// An affine covector on `N x W`, written `(x, v, a, P)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseLiftNW {
    pub x: Event,
    pub v: FourVector,
    pub a: FourCovector,
    pub p: PElement,
}

/// `(x, P, v, a) -> (x, v, a, P)`.
pub fn alpha_map(t: TangentNP) -> PhaseLiftNW {
    PhaseLiftNW {
        x: t.x,
        v: t.v,
        a: t.a,
        p: t.p,
    }
}

/// `(x, P, v, a) -> (x, P, a, -v)`.
pub fn beta_map(t: TangentNP) -> CotangentNP {
    CotangentNP {
        x: t.x,
        p: t.p,
        a: t.a,
        v: -t.v,
    }
}

pub fn beta_inverse(c: CotangentNP) -> TangentNP {
    TangentNP {
        x: c.x,
        p: c.p,
        v: -c.v,
        a: c.a,
    }
}

/// `(x, P, a, v) -> (x, -v, a, P)`.
pub fn gamma_map(c: CotangentNP) -> PhaseLiftNW {
    PhaseLiftNW {
        x: c.x,
        v: -c.v,
        a: c.a,
        p: c.p,
    }
}

/// The frame-independent description of one particle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniversalDynamics {
    pub mass: Mass,
    pub potential: Potential,
}

impl UniversalDynamics {
    pub fn new(mass: Mass, potential: Potential) -> Self {
        UniversalDynamics { mass, potential }
    }

    /// The affine lagrangian evaluated through the frame `u`. The result does not depend on `u`.
    pub fn lagrangian_in(&self, u: Frame, x: Event, v: FourVector) -> Result<WElement> {
        let value = HomogeneousDynamics::new(u, self.mass, self.potential).lagrangian(x, v)?;
        Ok(WElement::new(self.mass, u, v, value))
    }

    pub fn lagrangian(&self, x: Event, v: FourVector) -> Result<WElement> {
        self.lagrangian_in(U_REF, x, v)
    }

    /// The Legendre map into `P` computed through the frame `u`; independent of `u`.
    pub fn legendre_in(&self, u: Frame, x: Event, v: FourVector) -> Result<PElement> {
        let p = HomogeneousDynamics::new(u, self.mass, self.potential).legendre(x, v)?;
        Ok(PElement::new(self.mass, u, p))
    }

    pub fn legendre(&self, x: Event, v: FourVector) -> Result<PElement> {
        self.legendre_in(U_REF, x, v)
    }

    fn check_mass(&self, point: &PElement) -> Result<()> {
        self.mass.ensure_same(point.mass)
    }

    /// Reduced generating family `r (Psi_m + phi(x))` over `N x P x R+`.
    pub fn reduced_h(&self, x: Event, point: PElement, r: f64) -> Result<f64> {
        self.check_mass(&point)?;
        if !(r > 0.0) {
            return Err(MechanicsError::NonPositiveFiber(r));
        }
        Ok(r * (point.psi() + self.potential.value(x)))
    }

    /// Whether `(x, P, xdot, pdot)` lies in the universal dynamics, componentwise within `tol`.
    pub fn contains(
        &self,
        x: Event,
        point: PElement,
        xdot: FourVector,
        pdot: FourCovector,
        tol: f64,
    ) -> Result<bool> {
        self.check_mass(&point)?;
        check_tolerance(tol)?;
        let Ok(r) = future_time_component(xdot) else {
            return Ok(false);
        };
        if !((point.psi() + self.potential.value(x)).abs() <= tol) {
            return Ok(false);
        }
        let p = point.p;
        let expected_xdot = (g_prime_apply(p) * (1.0 / self.mass.get()) + U_REF.as_vector()) * r;
        if !((xdot - expected_xdot).max_abs() <= tol) {
            return Ok(false);
        }
        Ok((pdot + self.potential.differential(x) * r).max_abs() <= tol)
    }

    /// Morse family `<P, v> - l(x, v)`, read as a real number through the fiber action of `W`.
    pub fn morse_h(&self, x: Event, point: PElement, v: FourVector) -> Result<f64> {
        self.check_mass(&point)?;
        let lagrangian = self.lagrangian(x, v)?;
        lagrangian.fiber_difference(point.pairing(v))
    }
}
