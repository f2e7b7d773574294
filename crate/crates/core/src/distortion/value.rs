use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Scalar;
use crate::Rational;

/// A nonnegative quantity that may be unbounded.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedValue<T = Rational> {
    Finite(T),
    PositiveInfinity,
}

impl<T: Scalar> ExtendedValue<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            ExtendedValue::PositiveInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::PositiveInfinity)
    }

    /// Larger of the two.
    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Smaller of the two.
    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// `num / den`, infinite when `den` is zero and `num` is not.
    pub fn ratio(num: T, den: T) -> Self {
        if den.is_zero() {
            ExtendedValue::PositiveInfinity
        } else {
            ExtendedValue::Finite(num / den)
        }
    }

    pub fn map<U: Scalar>(&self, f: impl FnOnce(&T) -> U) -> ExtendedValue<U> {
        match self {
            ExtendedValue::Finite(v) => ExtendedValue::Finite(f(v)),
            ExtendedValue::PositiveInfinity => ExtendedValue::PositiveInfinity,
        }
    }
}

impl<T: Scalar> PartialOrd for ExtendedValue<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtendedValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (Finite(_), PositiveInfinity) => Some(Ordering::Less),
            (PositiveInfinity, Finite(_)) => Some(Ordering::Greater),
            (PositiveInfinity, PositiveInfinity) => Some(Ordering::Equal),
        }
    }
}

impl<T: fmt::Display> fmt::Display for ExtendedValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::Finite(v) => v.fmt(f),
            ExtendedValue::PositiveInfinity => f.write_str("inf"),
        }
    }
}

impl<T> From<T> for ExtendedValue<T> {
    fn from(v: T) -> Self {
        ExtendedValue::Finite(v)
    }
}
