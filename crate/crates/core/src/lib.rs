//! Newtonian particle mechanics that does not depend on a choice of inertial frame.
//!
//! The crate is layered bottom-up:
//!
//! * [`spacetime`]: the Newtonian space-time `(N, tau, g)` in a fixed chart;
//! * [`potential`]: scalar potentials on `N`;
//! * [`inhomogeneous`] and [`homogeneous`]: the dynamics seen from one frame,
//!   parameterized by time or by an arbitrary parameter;
//! * [`affine_values`]: the frame-free lagrangian values `W`, the affine phase
//!   space `P`, and the universal dynamics built over them;
//! * [`verify`]: randomized property suites checking that all of the above fit together.
//!
//! ```
//! use affine_mechanics::affine_values::UniversalDynamics;
//! use affine_mechanics::spacetime::{Event, Frame, FourVector, SpatialVector};
//! use affine_mechanics::{Mass, Potential};
//!
//! let dynamics = UniversalDynamics::new(Mass::new(1.0)?, Potential::Zero);
//! let x = Event::new(0.0, 0.0, 0.0, 0.0);
//! let v = FourVector::new(1.0, 0.6, 0.0, 0.0);
//! let a = dynamics.legendre_in(Frame::from_boost(SpatialVector::new(0.0, 0.0, 0.0)), x, v)?;
//! let b = dynamics.legendre_in(Frame::from_boost(SpatialVector::new(1.5, -0.3, 0.2)), x, v)?;
//! assert!(a.distance(&b) < 1e-12);
//! # Ok::<(), affine_mechanics::MechanicsError>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod affine_values;
pub mod error;
pub mod homogeneous;
pub mod inhomogeneous;
pub mod mass;
pub mod potential;
pub mod spacetime;
pub mod verify;

pub use error::{MechanicsError, Result};
pub use mass::Mass;
pub use potential::Potential;
