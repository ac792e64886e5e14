//! Time-parameterized dynamics of one particle observed from a fixed inertial frame.
//!
//! Phase space is `N x E0*`; the equations of motion are
//! `pdot = -d_s phi(x)` and `xdot = g^-1(p/m) + u`.

use crate::error::{MechanicsError, Result};
use crate::mass::Mass;
use crate::potential::Potential;
use crate::spacetime::{
    embed, g_apply, g_inv, Event, FourCovector, FourVector, Frame, SpatialCovector, SpatialVector,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InhomState {
    pub x: Event,
    pub p: SpatialCovector,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InhomTangent {
    pub xdot: Frame,
    pub pdot: SpatialCovector,
}

/// An element `(x, w, a, b)` of the vertical cotangent bundle over `N x E1`,
/// with `a` the spatial position derivative and `b` the velocity derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerticalCovector {
    pub x: Event,
    pub w: Frame,
    pub a: SpatialCovector,
    pub b: SpatialCovector,
}

/// Reduced canonical isomorphism: `(x, p, xdot, pdot) -> (x, xdot, pdot, p)`.
pub fn alpha_reduced(state: InhomState, tangent: InhomTangent) -> VerticalCovector {
    VerticalCovector {
        x: state.x,
        w: tangent.xdot,
        a: tangent.pdot,
        b: state.p,
    }
}

/// Inverse of [`alpha_reduced`].
pub fn alpha_reduced_inverse(c: VerticalCovector) -> (InhomState, InhomTangent) {
    (
        InhomState { x: c.x, p: c.b },
        InhomTangent {
            xdot: c.w,
            pdot: c.a,
        },
    )
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub time: f64,
    pub state: InhomState,
    pub energy: f64,
}

/// A particle of given mass in a potential, described from the frame `frame`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameDynamics {
    pub frame: Frame,
    pub mass: Mass,
    pub potential: Potential,
}

impl FrameDynamics {
    pub fn new(frame: Frame, mass: Mass, potential: Potential) -> Self {
        FrameDynamics {
            frame,
            mass,
            potential,
        }
    }

    pub fn lagrangian(&self, x: Event, w: Frame) -> f64 {
        let rel = w - self.frame;
        0.5 * self.mass.get() * g_apply(rel).apply(rel) - self.potential.value(x)
    }

    pub fn hamiltonian(&self, state: InhomState) -> f64 {
        let p = state.p;
        p.apply(g_inv(p)) / (2.0 * self.mass.get()) + self.potential.value(state.x)
    }

    pub fn field(&self, state: InhomState) -> InhomTangent {
        let (vel, pdot) = self.vertical_field(state);
        InhomTangent {
            xdot: self.frame + vel,
            pdot,
        }
    }

    /// The part of [`field`](Self::field) vertical over time; the frame vector `u` is not added.
    pub fn vertical_field(&self, state: InhomState) -> (SpatialVector, SpatialCovector) {
        let vel = g_inv(state.p * (1.0 / self.mass.get()));
        (vel, -self.potential.spatial_differential(state.x))
    }

    /// Exact partial derivatives of the hamiltonian: `(dh/dx, dh/dp)`.
    pub fn hamiltonian_gradient(&self, state: InhomState) -> (FourCovector, SpatialVector) {
        let dh_dx = self.potential.differential(state.x);
        let dh_dp = g_inv(state.p) * (1.0 / self.mass.get());
        (dh_dx, dh_dp)
    }

    /// Hamiltonian vector field of the hamiltonian under `Lambda = dp_i ^ dx^i`.
    ///
    /// The bivector has no time leg, so `tdot = 0` and the field is vertical.
    pub fn poisson_field(&self, state: InhomState) -> (SpatialVector, SpatialCovector) {
        let (dh_dx, dh_dp) = self.hamiltonian_gradient(state);
        let xdot = FourVector::new(0.0, dh_dp.x, dh_dp.y, dh_dp.z);
        debug_assert_eq!(xdot.dt, 0.0);
        let pdot = SpatialCovector::new(-dh_dx.px, -dh_dx.py, -dh_dx.pz);
        (xdot.chart_spatial(), pdot)
    }

    /// Vertical derivative `d_s l(x, w) = (x, w, -d_s phi(x), m g(w - u))`.
    pub fn lagrangian_differential(&self, x: Event, w: Frame) -> VerticalCovector {
        VerticalCovector {
            x,
            w,
            a: -self.potential.spatial_differential(x),
            b: g_apply(w - self.frame) * self.mass.get(),
        }
    }

    /// The point of the dynamics generated by the lagrangian at `(x, w)`.
    pub fn generate_from_lagrangian(&self, x: Event, w: Frame) -> (InhomState, InhomTangent) {
        alpha_reduced_inverse(self.lagrangian_differential(x, w))
    }

    /// Fixed-step classical RK4. Returns `steps + 1` records including the initial state.
    pub fn integrate(
        &self,
        initial: InhomState,
        dt: f64,
        steps: usize,
    ) -> Result<Vec<TrajectoryPoint>> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(MechanicsError::NonPositiveStep(dt));
        }
        if steps == 0 {
            return Err(MechanicsError::NoSteps);
        }
        let t0 = initial.x.t;
        let mut out = Vec::with_capacity(steps + 1);
        let mut state = initial;
        out.push(TrajectoryPoint {
            step: 0,
            time: t0,
            state,
            energy: self.hamiltonian(state),
        });
        for step in 1..=steps {
            state = self.rk4_step(state, dt);
            if !state.x.is_finite() || !state.p.is_finite() {
                return Err(MechanicsError::NonFinite { step });
            }
            let energy = self.hamiltonian(state);
            if !energy.is_finite() {
                return Err(MechanicsError::NonFinite { step });
            }
            out.push(TrajectoryPoint {
                step,
                time: t0 + step as f64 * dt,
                state,
                energy,
            });
        }
        Ok(out)
    }

    /// Energy of `state` as measured in the frame `rest`.
    ///
    /// Conserved along trajectories whenever `<d phi, rest> = 0`, even though
    /// `hamiltonian` itself drifts at the rate `<d phi, u>`.
    pub fn rest_frame_energy(&self, state: InhomState, rest: Frame) -> f64 {
        let p = state.p + g_apply(self.frame - rest) * self.mass.get();
        FrameDynamics::new(rest, self.mass, self.potential)
            .hamiltonian(InhomState { x: state.x, p })
    }

    fn rate(&self, state: InhomState) -> (FourVector, SpatialCovector) {
        let t = self.field(state);
        (t.xdot.as_vector(), t.pdot)
    }

    fn rk4_step(&self, s: InhomState, h: f64) -> InhomState {
        let shift = |k: (FourVector, SpatialCovector), c: f64| InhomState {
            x: s.x + k.0 * c,
            p: s.p + k.1 * c,
        };
        let k1 = self.rate(s);
        let k2 = self.rate(shift(k1, 0.5 * h));
        let k3 = self.rate(shift(k2, 0.5 * h));
        let k4 = self.rate(shift(k3, h));
        let dx = (k1.0 + k2.0 * 2.0 + k3.0 * 2.0 + k4.0) * (h / 6.0);
        let dp = (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0);
        InhomState {
            x: s.x + dx,
            p: s.p + dp,
        }
    }
}

/// Frame momentum of a particle with physical velocity `v` seen from `u`: `m g(v - u)`.
pub fn frame_momentum(mass: Mass, u: Frame, v: Frame) -> SpatialCovector {
    g_apply(v - u) * mass.get()
}

/// Velocity relative to the chart, as a four-vector with unit time component.
pub fn embed_velocity(u: Frame, vel: SpatialVector) -> FourVector {
    u.as_vector() + embed(vel)
}
