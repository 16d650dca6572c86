//! Scalar abstraction: everything in this crate is generic over a floating
//! point type implementing [`Real`].

use core::fmt;
use core::iter::Sum;
use core::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar usable for table geometry and orbit statistics.
///
/// Implemented by `f32` and `f64`. The stated tolerances of the library
/// (1e-9 .. 1e-12 scale) only make sense at `f64` precision; `f32` works but
/// internal tolerances are floored at a small multiple of machine epsilon.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Default
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum<Self>
        + fmt::Debug
        + fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}

/// Shorthand conversion from an `f64` literal.
#[inline]
pub(crate) fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert to the scalar type")
}

/// A nominal (f64-scale) tolerance, floored at a few machine epsilons of `T`
/// so the same code remains meaningful at lower precision.
#[inline]
pub(crate) fn tol<T: Real>(nominal: f64) -> T {
    let t = cast::<T>(nominal);
    let floor = T::epsilon() * cast::<T>(32.0);
    if t > floor {
        t
    } else {
        floor
    }
}

/// Euclidean remainder into `[0, m)`. The result is guaranteed strictly below
/// `m` even when rounding in `r + m` would land exactly on `m`.
#[inline]
pub(crate) fn rem_euclid<T: Real>(x: T, m: T) -> T {
    let r = x % m;
    let r = if r < T::zero() { r + m } else { r };
    if r >= m {
        r - m
    } else {
        r
    }
}
