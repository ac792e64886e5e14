//! Parameterization-independent dynamics in a fixed frame.
//!
//! Velocities live in the open cone `V+ = { v : <tau, v> > 0 }` and momenta in
//! the full `V*`. The lagrangian is the degree-one homogeneous extension of the
//! inhomogeneous one, its Legendre image is the mass shell
//! `K_{m,u} = { (1/2m) <p, g'(p)> + <p, u> + phi(x) = 0 }`, and the dynamics can
//! equivalently be generated by `H(x, p, v) = <p, v> - l(x, v)` with the
//! velocity as auxiliary variable, or by its reduction `r (mass-shell residual)`.

use crate::error::{MechanicsError, Result};
use crate::mass::Mass;
use crate::potential::Potential;
use crate::spacetime::{
    embed, g_apply, g_inv, g_prime_apply, iota_star, iota_u, iota_u_star, pair, Event,
    FourCovector, FourVector, Frame, TAU,
};

/// Lower bound on `<tau, v>` accepted as a future-pointing velocity.
pub const FUTURE_CONE_EPS: f64 = 1e-12;

/// Default tolerance for membership predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest mass-shell residual accepted by [`HomogeneousDynamics::characteristic_field`].
pub const SHELL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomState {
    pub x: Event,
    pub p: FourCovector,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomTangent {
    pub xdot: FourVector,
    pub pdot: FourCovector,
}

/// Returns `<tau, v>` when `v` is in `V+`.
pub fn future_time_component(v: FourVector) -> Result<f64> {
    let s = pair(TAU, v);
    if s > FUTURE_CONE_EPS {
        Ok(s)
    } else {
        Err(MechanicsError::OutsideFutureCone(s))
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        Err(MechanicsError::NonPositiveTolerance(tol))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomogeneousDynamics {
    pub frame: Frame,
    pub mass: Mass,
    pub potential: Potential,
}

impl HomogeneousDynamics {
    pub fn new(frame: Frame, mass: Mass, potential: Potential) -> Self {
        HomogeneousDynamics {
            frame,
            mass,
            potential,
        }
    }

    pub fn lagrangian(&self, x: Event, v: FourVector) -> Result<f64> {
        let s = future_time_component(v)?;
        let w = iota_u(self.frame, v);
        Ok(0.5 * self.mass.get() * g_apply(w).apply(w) / s - s * self.potential.value(x))
    }

    /// The differential `(alpha_x, alpha_v)` of the lagrangian at `(x, v)`.
    pub fn differential(&self, x: Event, v: FourVector) -> Result<(FourCovector, FourCovector)> {
        let s = future_time_component(v)?;
        let alpha_x = self.potential.differential(x) * (-s);
        Ok((alpha_x, self.legendre_unchecked(x, v, s)))
    }

    /// The Legendre map `L_u(x, v)`, the velocity derivative of the lagrangian.
    pub fn legendre(&self, x: Event, v: FourVector) -> Result<FourCovector> {
        let s = future_time_component(v)?;
        Ok(self.legendre_unchecked(x, v, s))
    }

    fn legendre_unchecked(&self, x: Event, v: FourVector, s: f64) -> FourCovector {
        let m = self.mass.get();
        let rel = iota_u(self.frame, v) * (1.0 / s);
        let kinetic = 0.5 * m * g_apply(rel).apply(rel);
        iota_u_star(self.frame, g_apply(rel) * m) - TAU * (kinetic + self.potential.value(x))
    }

    pub fn mass_shell_residual(&self, x: Event, p: FourCovector) -> f64 {
        pair(p, g_prime_apply(p)) / (2.0 * self.mass.get())
            + pair(p, self.frame.as_vector())
            + self.potential.value(x)
    }

    /// Whether `(x, p, xdot, pdot)` belongs to the homogeneous dynamics, componentwise within `tol`.
    pub fn contains(&self, state: HomState, tangent: HomTangent, tol: f64) -> Result<bool> {
        check_tolerance(tol)?;
        let v = tangent.xdot;
        let Ok(s) = future_time_component(v) else {
            return Ok(false);
        };
        let force = tangent.pdot + self.potential.differential(state.x) * s;
        if force.max_abs() > tol {
            return Ok(false);
        }
        let p = self.legendre_unchecked(state.x, v, s);
        Ok((state.p - p).max_abs() <= tol)
    }

    /// Generating family `H(x, p, v) = <p, v> - l(x, v)` over `N x V* x V+`.
    pub fn generating_h(&self, x: Event, p: FourCovector, v: FourVector) -> Result<f64> {
        Ok(pair(p, v) - self.lagrangian(x, v)?)
    }

    /// Reduced family `r ((1/2m) <p, g'(p)> + <p, u> + phi(x))` over `N x V* x R+`.
    pub fn reduced_h(&self, x: Event, p: FourCovector, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(MechanicsError::NonPositiveFiber(r));
        }
        Ok(r * self.mass_shell_residual(x, p))
    }

    /// Critical velocity of the generating family along the fibres of fixed `<tau, v> = s`:
    /// `v = (s/m) iota(g^-1(iota*(p))) + s u`.
    pub fn fiber_critical_velocity(&self, p: FourCovector, s: f64) -> Result<FourVector> {
        if !(s > 0.0) {
            return Err(MechanicsError::NonPositiveFiber(s));
        }
        let spatial = embed(g_inv(iota_star(p))) * (s / self.mass.get());
        Ok(spatial + self.frame.as_vector() * s)
    }

    /// `r` times the hamiltonian field of the mass-shell constraint; defined only on the shell.
    ///
    /// `r > 0` gives points of the dynamics, `r < 0` the time-reversed part of the
    /// characteristic distribution.
    pub fn characteristic_field(&self, x: Event, p: FourCovector, r: f64) -> Result<HomTangent> {
        let residual = self.mass_shell_residual(x, p);
        if !(residual.abs() <= SHELL_TOLERANCE) {
            return Err(MechanicsError::OffShell(residual));
        }
        let xdot = (g_prime_apply(p) * (1.0 / self.mass.get()) + self.frame.as_vector()) * r;
        let pdot = self.potential.differential(x) * (-r);
        Ok(HomTangent { xdot, pdot })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inhomogeneous::FrameDynamics;
    use crate::spacetime::{SpatialVector, ORIGIN, U_REF};
    use approx::assert_abs_diff_eq;

    fn m(v: f64) -> Mass {
        Mass::new(v).unwrap()
    }

    fn free() -> HomogeneousDynamics {
        HomogeneousDynamics::new(U_REF, m(1.0), Potential::Zero)
    }

    fn close(a: FourCovector, b: [f64; 4], eps: f64) {
        for (x, y) in a.to_array().iter().zip(b) {
            assert_abs_diff_eq!(*x, y, epsilon = eps);
        }
    }

    const V: FourVector = FourVector::new(1.0, 0.6, 0.0, 0.0);

    #[test]
    fn lagrangian_examples() {
        assert_eq!(free().lagrangian(ORIGIN, U_REF.as_vector()), Ok(0.0));
        assert_abs_diff_eq!(free().lagrangian(ORIGIN, V).unwrap(), 0.18, epsilon = 1e-15);
        assert_abs_diff_eq!(
            free().lagrangian(ORIGIN, V * 2.0).unwrap(),
            0.36,
            epsilon = 1e-15
        );
    }

    #[test]
    fn lagrangian_requires_future_velocity() {
        assert_eq!(
            free().lagrangian(ORIGIN, -V),
            Err(MechanicsError::OutsideFutureCone(-1.0))
        );
        assert!(free()
            .lagrangian(ORIGIN, FourVector::new(0.0, 1.0, 0.0, 0.0))
            .is_err());
        assert!(free()
            .legendre(ORIGIN, FourVector::new(1e-13, 1.0, 0.0, 0.0))
            .is_err());
    }

    #[test]
    fn restriction_to_unit_time_matches_inhomogeneous() {
        let u = Frame::from_boost(SpatialVector::new(0.3, -0.2, 1.0));
        let phi = Potential::harmonic(0.7, Event::new(0.0, 1.0, 0.0, -1.0)).unwrap();
        let x = Event::new(0.4, 0.1, 1.2, -0.6);
        let w = Frame::from_boost(SpatialVector::new(-0.5, 0.8, 0.2));
        let hom = HomogeneousDynamics::new(u, m(1.7), phi);
        let inhom = FrameDynamics::new(u, m(1.7), phi);
        assert_abs_diff_eq!(
            hom.lagrangian(x, w.as_vector()).unwrap(),
            inhom.lagrangian(x, w),
            epsilon = 1e-12
        );
    }

    #[test]
    fn differential_examples() {
        let (ax, av) = free().differential(ORIGIN, V).unwrap();
        assert_eq!(ax, FourCovector::ZERO);
        close(av, [-0.18, 0.6, 0.0, 0.0], 1e-15);
        let (_, av) = free().differential(ORIGIN, U_REF.as_vector()).unwrap();
        assert_eq!(av, FourCovector::ZERO);
    }

    #[test]
    fn differential_matches_finite_differences() {
        let u = Frame::from_boost(SpatialVector::new(0.5, 0.0, -0.4));
        let phi = Potential::uniform(FourCovector::new(0.2, -1.0, 0.5, 0.3));
        let d = HomogeneousDynamics::new(u, m(2.2), phi);
        let x = Event::new(1.0, -0.5, 0.25, 2.0);
        let v = FourVector::new(0.8, 1.1, -0.3, 0.4);
        let (ax, av) = d.differential(x, v).unwrap();
        let h = 1e-6;
        for i in 0..4 {
            let mut e = [0.0; 4];
            e[i] = h;
            let e = FourVector::from_array(e);
            let fd_v =
                (d.lagrangian(x, v + e).unwrap() - d.lagrangian(x, v - e).unwrap()) / (2.0 * h);
            let fd_x =
                (d.lagrangian(x + e, v).unwrap() - d.lagrangian(x - e, v).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(av.to_array()[i], fd_v, epsilon = 1e-6);
            assert_abs_diff_eq!(ax.to_array()[i], fd_x, epsilon = 1e-6);
        }
        assert_abs_diff_eq!(pair(av, v), d.lagrangian(x, v).unwrap(), epsilon = 1e-12);
    }

    #[test]
    fn legendre_examples() {
        close(
            free().legendre(ORIGIN, V).unwrap(),
            [-0.18, 0.6, 0.0, 0.0],
            1e-15,
        );
        assert_eq!(
            free().legendre(ORIGIN, U_REF.as_vector()).unwrap(),
            FourCovector::ZERO
        );
        let a = free().legendre(ORIGIN, V).unwrap();
        let b = free().legendre(ORIGIN, V * 3.5).unwrap();
        close(a, b.to_array(), 1e-15);
    }

    #[test]
    fn mass_shell_examples() {
        let d = free();
        assert_abs_diff_eq!(
            d.mass_shell_residual(ORIGIN, FourCovector::new(-0.18, 0.6, 0.0, 0.0)),
            0.0,
            epsilon = 1e-15
        );
        assert_eq!(d.mass_shell_residual(ORIGIN, TAU), 1.0);
        let p = d.legendre(ORIGIN, V).unwrap();
        assert_abs_diff_eq!(d.mass_shell_residual(ORIGIN, p), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn membership_examples() {
        let u = Frame::from_boost(SpatialVector::new(0.2, 0.1, 0.0));
        let phi = Potential::harmonic(1.0, ORIGIN).unwrap();
        let d = HomogeneousDynamics::new(u, m(1.0), phi);
        let x = Event::new(0.0, 1.0, 0.5, 0.0);
        let v = FourVector::new(1.5, 0.3, 0.0, -0.2);
        let state = HomState {
            x,
            p: d.legendre(x, v).unwrap(),
        };
        let tangent = HomTangent {
            xdot: v,
            pdot: phi.differential(x) * (-1.5),
        };
        assert_eq!(d.contains(state, tangent, 1e-9), Ok(true));

        let reversed = HomTangent {
            xdot: -v,
            pdot: tangent.pdot,
        };
        assert_eq!(d.contains(state, reversed, 1e-9), Ok(false));

        let shifted = HomState {
            x,
            p: state.p + FourCovector::new(0.0, 0.1, 0.0, 0.0),
        };
        assert_eq!(d.contains(shifted, tangent, 1e-9), Ok(false));

        let wrong_force = HomTangent {
            xdot: v,
            pdot: tangent.pdot * 2.0,
        };
        assert_eq!(d.contains(state, wrong_force, 1e-9), Ok(false));

        assert_eq!(
            d.contains(state, tangent, 0.0),
            Err(MechanicsError::NonPositiveTolerance(0.0))
        );
    }

    #[test]
    fn generating_family_examples() {
        let d = free();
        let p = d.legendre(ORIGIN, V).unwrap();
        assert_abs_diff_eq!(d.generating_h(ORIGIN, p, V).unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(
            d.generating_h(ORIGIN, FourCovector::ZERO, U_REF.as_vector()),
            Ok(0.0)
        );
        assert_abs_diff_eq!(
            d.generating_h(ORIGIN, TAU, V).unwrap(),
            0.82,
            epsilon = 1e-15
        );
        assert!(d.generating_h(ORIGIN, TAU, -V).is_err());
    }

    #[test]
    fn reduced_family_examples() {
        let d = free();
        let on_shell = d.legendre(ORIGIN, V).unwrap();
        assert_abs_diff_eq!(
            d.reduced_h(ORIGIN, on_shell, 4.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_eq!(d.reduced_h(ORIGIN, TAU, 2.0), Ok(2.0));
        let p = FourCovector::new(0.3, 1.0, -0.5, 0.2);
        let one = d.reduced_h(ORIGIN, p, 0.7).unwrap();
        assert_abs_diff_eq!(
            d.reduced_h(ORIGIN, p, 1.4).unwrap(),
            2.0 * one,
            epsilon = 1e-15
        );
        assert_eq!(
            d.reduced_h(ORIGIN, p, 0.0),
            Err(MechanicsError::NonPositiveFiber(0.0))
        );
        assert!(d.reduced_h(ORIGIN, p, -1.0).is_err());
    }

    #[test]
    fn fiber_critical_velocity_examples() {
        let u = Frame::from_boost(SpatialVector::new(0.4, -0.4, 0.1));
        let d = HomogeneousDynamics::new(u, m(2.0), Potential::Zero);
        assert_eq!(
            d.fiber_critical_velocity(TAU * 3.0, 1.5).unwrap(),
            u.as_vector() * 1.5
        );

        let v = free()
            .fiber_critical_velocity(FourCovector::new(-0.18, 0.6, 0.0, 0.0), 1.0)
            .unwrap();
        assert_eq!(v.to_array(), [1.0, 0.6, 0.0, 0.0]);
        let v2 = free()
            .fiber_critical_velocity(FourCovector::new(-0.18, 0.6, 0.0, 0.0), 2.0)
            .unwrap();
        assert_eq!(v2.to_array(), [2.0, 1.2, 0.0, 0.0]);
        assert_eq!(
            free().fiber_critical_velocity(TAU, 0.0),
            Err(MechanicsError::NonPositiveFiber(0.0))
        );
    }

    #[test]
    fn critical_velocity_is_stationary_in_spatial_directions() {
        let u = Frame::from_boost(SpatialVector::new(-0.3, 0.6, 0.2));
        let phi = Potential::uniform(FourCovector::new(0.1, 0.4, -0.2, 0.9));
        let d = HomogeneousDynamics::new(u, m(1.3), phi);
        let x = Event::new(0.2, -1.0, 0.5, 1.5);
        let p = FourCovector::new(0.7, -1.1, 0.4, 0.9);
        let v = d.fiber_critical_velocity(p, 1.7).unwrap();
        assert_abs_diff_eq!(pair(TAU, v), 1.7, epsilon = 1e-15);
        let h = 1e-6;
        for i in 1..4 {
            let mut e = [0.0; 4];
            e[i] = h;
            let e = FourVector::from_array(e);
            let fd = (d.generating_h(x, p, v + e).unwrap() - d.generating_h(x, p, v - e).unwrap())
                / (2.0 * h);
            assert_abs_diff_eq!(fd, 0.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn characteristic_field_examples() {
        let d = free();
        let p = FourCovector::new(-0.18, 0.6, 0.0, 0.0);
        let t = d.characteristic_field(ORIGIN, p, 1.0).unwrap();
        let xdot = t.xdot.to_array();
        assert_abs_diff_eq!(xdot[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(xdot[1], 0.6, epsilon = 1e-15);
        assert_eq!(t.pdot, FourCovector::ZERO);
        let state = HomState { x: ORIGIN, p };
        assert_eq!(d.contains(state, t, 1e-9), Ok(true));
        let back = d.characteristic_field(ORIGIN, p, -1.0).unwrap();
        assert_eq!(d.contains(state, back, 1e-9), Ok(false));
    }

    #[test]
    fn characteristic_field_rejects_off_shell() {
        assert_eq!(
            free().characteristic_field(ORIGIN, TAU, 1.0),
            Err(MechanicsError::OffShell(1.0))
        );
    }

    #[test]
    fn characteristic_field_reproduces_dynamics_members() {
        let u = Frame::from_boost(SpatialVector::new(0.9, -0.1, 0.3));
        let phi = Potential::harmonic(1.2, Event::new(0.0, 0.5, 0.5, 0.5)).unwrap();
        let d = HomogeneousDynamics::new(u, m(0.8), phi);
        let x = Event::new(0.3, -0.7, 1.1, 0.0);
        let v = FourVector::new(2.5, 0.4, 1.9, -1.2);
        let p = d.legendre(x, v).unwrap();
        let t = d.characteristic_field(x, p, 2.5).unwrap();
        assert_abs_diff_eq!((t.xdot - v).max_abs(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            (t.pdot + phi.differential(x) * 2.5).max_abs(),
            0.0,
            epsilon = 1e-12
        );
        let round_trip = d.fiber_critical_velocity(p, 2.5).unwrap();
        assert_abs_diff_eq!((round_trip - v).max_abs(), 0.0, epsilon = 1e-12);
    }
}
