//! Numeric substrate shared by every algorithm in the crate.
//!
//! All routines are generic over [`Scalar`]. The exact instantiation is
//! [`Rational`](crate::Rational); `f64` is supported for quick exploratory
//! runs, with comparisons made against a fixed tolerance.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, NumAssignRef, NumRef, One, Signed, ToPrimitive, Zero};

/// A field element usable by the solvers.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Signed + NumRef + NumAssignRef + Send + Sync + 'static
{
    /// Whether arithmetic is exact.
    const EXACT: bool;

    /// Comparison slack. Zero for exact types.
    fn tolerance() -> Self;

    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// `self -= a * b`, the inner update of every pivot.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a.clone() * b;
    }

    /// Integer power; negative exponents take the reciprocal.
    fn powi(&self, e: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc *= self;
        }
        if e < 0 {
            Self::one() / acc
        } else {
            acc
        }
    }

    /// True when `|self| <= tolerance`.
    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    /// `self <= other` up to tolerance.
    fn le_tol(&self, other: &Self) -> bool {
        *self <= other.clone() + Self::tolerance()
    }

    /// `self < other` by more than the tolerance.
    fn lt_tol(&self, other: &Self) -> bool {
        self.clone() + Self::tolerance() < *other
    }

    /// Equality up to tolerance.
    fn eq_tol(&self, other: &Self) -> bool {
        (self.clone() - other).is_negligible()
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        Self::zero()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if b.is_one() {
            *self -= a;
        } else {
            *self -= a * b;
        }
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn le_tol(&self, other: &Self) -> bool {
        self <= other
    }

    fn lt_tol(&self, other: &Self) -> bool {
        self < other
    }

    fn eq_tol(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn powi(&self, e: i32) -> Self {
        f64::powi(*self, e)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn from_i64(v: i64) -> Self {
        v as f32
    }

    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }

    fn powi(&self, e: i32) -> Self {
        f32::powi(*self, e)
    }
}

/// Converts an `f64` into an exact rational, if finite.
pub fn rational_from_f64(v: f64) -> Option<BigRational> {
    BigRational::from_f64(v)
}
