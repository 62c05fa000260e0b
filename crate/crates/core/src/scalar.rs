//! Numeric abstraction used by the real-time phase engine.
//!
//! The engine is generic over [`Scalar`] so that a test build can swap in an
//! operation-counting number type and check that every control step executes
//! the same arithmetic regardless of input. Production code uses `f64`.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

// The helpers below evaluate every operand and comparison unconditionally so
// the operation count does not depend on which side wins.

#[inline]
pub(crate) fn max<T: Scalar>(a: T, b: T) -> T {
    if a < b {
        b
    } else {
        a
    }
}

#[inline]
pub(crate) fn min<T: Scalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

#[inline]
pub(crate) fn abs<T: Scalar>(x: T) -> T {
    let negated = -x;
    if x < T::zero() {
        negated
    } else {
        x
    }
}

#[inline]
pub(crate) fn clamp01<T: Scalar>(x: T) -> T {
    min(max(x, T::zero()), T::one())
}
