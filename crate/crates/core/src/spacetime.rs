//! Newtonian space-time `(N, tau, g)` in a single global chart.
//!
//! The chart fixes a reference event [`ORIGIN`], an orthonormal basis of the
//! simultaneity space `E0 = ker tau` and the rest frame [`U_REF`]. In these
//! coordinates `tau` reads the time component and `g` is the identity on the
//! spatial components. Nothing downstream relies on the chart beyond that:
//! every frame-dependent quantity is built from an explicit [`Frame`].
//!
//! Vectors (`V`, `E0`) and covectors (`V*`, `E0*`) are distinct types so a
//! momentum can never be added to a velocity by accident.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{MechanicsError, Result};

/// Tolerance on `<tau, u> = 1` accepted by [`Frame::new`].
pub const FRAME_TOLERANCE: f64 = 1e-12;

macro_rules! linear_ops {
    ($ty:ident { $($f:ident),+ }) => {
        impl Add for $ty {
            type Output = $ty;
            #[inline]
            fn add(self, rhs: $ty) -> $ty {
                $ty { $($f: self.$f + rhs.$f),+ }
            }
        }

        impl AddAssign for $ty {
            #[inline]
            fn add_assign(&mut self, rhs: $ty) {
                $(self.$f += rhs.$f;)+
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            #[inline]
            fn sub(self, rhs: $ty) -> $ty {
                $ty { $($f: self.$f - rhs.$f),+ }
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            #[inline]
            fn neg(self) -> $ty {
                $ty { $($f: -self.$f),+ }
            }
        }

        impl Mul<f64> for $ty {
            type Output = $ty;
            #[inline]
            fn mul(self, k: f64) -> $ty {
                $ty { $($f: self.$f * k),+ }
            }
        }

        impl Mul<$ty> for f64 {
            type Output = $ty;
            #[inline]
            fn mul(self, v: $ty) -> $ty {
                v * self
            }
        }

        impl $ty {
            /// Largest absolute component.
            pub fn max_abs(&self) -> f64 {
                [$(self.$f.abs()),+].into_iter().fold(0.0, f64::max)
            }

            pub fn is_finite(&self) -> bool {
                $(self.$f.is_finite())&&+
            }
        }
    };
}

/// Element of the model vector space `V`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourVector {
    pub dt: f64,
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
}

/// Element of `V*`, in the basis dual to the chart.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FourCovector {
    pub pt: f64,
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

/// Element of `E0 = ker tau`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpatialVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Element of `E0*`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpatialCovector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

linear_ops!(FourVector { dt, dx, dy, dz });
linear_ops!(FourCovector { pt, px, py, pz });
linear_ops!(SpatialVector { x, y, z });
linear_ops!(SpatialCovector { x, y, z });

impl FourVector {
    pub const ZERO: FourVector = FourVector::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(dt: f64, dx: f64, dy: f64, dz: f64) -> Self {
        FourVector { dt, dx, dy, dz }
    }

    pub fn from_array([dt, dx, dy, dz]: [f64; 4]) -> Self {
        FourVector { dt, dx, dy, dz }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.dt, self.dx, self.dy, self.dz]
    }

    /// Spatial chart components. This is `iota_u` only for `u = U_REF`.
    pub fn chart_spatial(self) -> SpatialVector {
        SpatialVector::new(self.dx, self.dy, self.dz)
    }
}

impl FourCovector {
    pub const ZERO: FourCovector = FourCovector::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(pt: f64, px: f64, py: f64, pz: f64) -> Self {
        FourCovector { pt, px, py, pz }
    }

    pub fn from_array([pt, px, py, pz]: [f64; 4]) -> Self {
        FourCovector { pt, px, py, pz }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.pt, self.px, self.py, self.pz]
    }
}

impl SpatialVector {
    pub const ZERO: SpatialVector = SpatialVector::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        SpatialVector { x, y, z }
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        SpatialVector { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl SpatialCovector {
    pub const ZERO: SpatialCovector = SpatialCovector::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        SpatialCovector { x, y, z }
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        SpatialCovector { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// The pairing `<q, w>` between `E0*` and `E0`.
    #[inline]
    pub fn apply(self, w: SpatialVector) -> f64 {
        self.x * w.x + self.y * w.y + self.z * w.z
    }
}

/// The time covector `tau`.
pub const TAU: FourCovector = FourCovector::new(1.0, 0.0, 0.0, 0.0);

/// The chart rest frame.
pub const U_REF: Frame = Frame(FourVector::new(1.0, 0.0, 0.0, 0.0));

/// The chart origin event.
pub const ORIGIN: Event = Event::new(0.0, 0.0, 0.0, 0.0);

/// Canonical pairing `<p, v>` between `V*` and `V`.
#[inline]
pub fn pair(p: FourCovector, v: FourVector) -> f64 {
    p.pt * v.dt + p.px * v.dx + p.py * v.dy + p.pz * v.dz
}

/// The metric `g: E0 -> E0*`.
#[inline]
pub fn g_apply(w: SpatialVector) -> SpatialCovector {
    SpatialCovector::new(w.x, w.y, w.z)
}

/// The inverse metric `g^-1: E0* -> E0`.
#[inline]
pub fn g_inv(q: SpatialCovector) -> SpatialVector {
    SpatialVector::new(q.x, q.y, q.z)
}

/// Canonical embedding `iota: E0 -> V`.
#[inline]
pub fn embed(w: SpatialVector) -> FourVector {
    FourVector::new(0.0, w.x, w.y, w.z)
}

/// Dual projection `iota*: V* -> E0*` (restriction to `E0`).
#[inline]
pub fn iota_star(p: FourCovector) -> SpatialCovector {
    SpatialCovector::new(p.px, p.py, p.pz)
}

/// The degenerate contravariant tensor `g' = iota . g^-1 . iota*`; its kernel is spanned by `tau`.
#[inline]
pub fn g_prime_apply(p: FourCovector) -> FourVector {
    embed(g_inv(iota_star(p)))
}

/// Projection `iota_u(v) = v - <tau, v> u` onto `E0` along the frame `u`.
#[inline]
pub fn iota_u(u: Frame, v: FourVector) -> SpatialVector {
    let s = pair(TAU, v);
    let b = u.velocity();
    SpatialVector::new(v.dx - s * b.x, v.dy - s * b.y, v.dz - s * b.z)
}

/// Adjoint of [`iota_u`]: the covector `v -> <q, iota_u(v)>`.
#[inline]
pub fn iota_u_star(u: Frame, q: SpatialCovector) -> FourCovector {
    FourCovector::new(-q.apply(u.velocity()), q.x, q.y, q.z)
}

/// Rebuilds a covector from its dual splitting `(iota*(p), <p, u>)`.
pub fn covector_from_splitting(u: Frame, spatial: SpatialCovector, on_frame: f64) -> FourCovector {
    FourCovector::new(
        on_frame - spatial.apply(u.velocity()),
        spatial.x,
        spatial.y,
        spatial.z,
    )
}

/// An inertial frame: an element of `E1 = { v : <tau, v> = 1 }`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame(FourVector);

impl Frame {
    /// Frame moving with spatial velocity `b` relative to the chart rest frame.
    pub const fn from_boost(b: SpatialVector) -> Self {
        Frame(FourVector::new(1.0, b.x, b.y, b.z))
    }

    /// Validates `|<tau, u> - 1| <= FRAME_TOLERANCE`; the stored time component is exactly 1.
    pub fn new(u: FourVector) -> Result<Self> {
        if !u.is_finite() || (u.dt - 1.0).abs() > FRAME_TOLERANCE {
            return Err(MechanicsError::InvalidFrame(u.dt));
        }
        Ok(Frame(FourVector::new(1.0, u.dx, u.dy, u.dz)))
    }

    pub fn as_vector(self) -> FourVector {
        self.0
    }

    /// The spatial velocity `u - U_REF`.
    pub fn velocity(self) -> SpatialVector {
        self.0.chart_spatial()
    }

    /// Midpoint `(u + u') / 2`, again an element of `E1`.
    pub fn midpoint(self, other: Frame) -> Frame {
        Frame::from_boost((self.velocity() + other.velocity()) * 0.5)
    }
}

/// `E1` is an affine space modelled on `E0`.
impl Sub for Frame {
    type Output = SpatialVector;
    fn sub(self, rhs: Frame) -> SpatialVector {
        self.velocity() - rhs.velocity()
    }
}

impl Add<SpatialVector> for Frame {
    type Output = Frame;
    fn add(self, w: SpatialVector) -> Frame {
        Frame::from_boost(self.velocity() + w)
    }
}

/// A point of `N`, in affine coordinates relative to [`ORIGIN`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Event {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Event { t, x, y, z }
    }

    pub fn from_array([t, x, y, z]: [f64; 4]) -> Self {
        Event { t, x, y, z }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Sub for Event {
    type Output = FourVector;
    fn sub(self, rhs: Event) -> FourVector {
        FourVector::new(
            self.t - rhs.t,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Add<FourVector> for Event {
    type Output = Event;
    fn add(self, v: FourVector) -> Event {
        Event::new(self.t + v.dt, self.x + v.dx, self.y + v.dy, self.z + v.dz)
    }
}

impl Sub<FourVector> for Event {
    type Output = Event;
    fn sub(self, v: FourVector) -> Event {
        self + (-v)
    }
}
