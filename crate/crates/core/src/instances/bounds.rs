//! Closed-form values attached to the lower-bound constructions.

use crate::scalar::Scalar;

/// `floor(m/2)` as an exponent.
pub(crate) fn half(m: usize) -> i32 {
    (m / 2) as i32
}

/// Largest even integer not above `m`.
pub(crate) fn even_floor(m: usize) -> i32 {
    (m - m % 2) as i32
}

/// `1 + 2(1 - alpha^h)/(1 + alpha^h)` with `h = floor(m/2)`.
pub fn reversed_bound<T: Scalar>(m: usize, alpha: &T) -> T {
    let p = alpha.powi(half(m));
    T::one() + T::from_i64(2) * (T::one() - &p) / (T::one() + p)
}

/// `1 + 2 alpha`.
pub fn intense_bound<T: Scalar>(alpha: &T) -> T {
    T::one() + T::from_i64(2) * alpha
}

/// `(3 - alpha)/(1 + alpha)`.
pub fn two_alt_mild_bound<T: Scalar>(alpha: &T) -> T {
    (T::from_i64(3) - alpha) / (T::one() + alpha)
}

/// `(1 + 3A)/(3 + A)` with `A = alpha^-floor(m/2)`.
pub fn line_general_bound<T: Scalar>(m: usize, alpha: &T) -> T {
    let a = alpha.powi(-half(m));
    (T::one() + T::from_i64(3) * &a) / (T::from_i64(3) + a)
}

/// Distortion of `a1` on the polar instance:
/// `(1 + 2 alpha^floor(m/2) - alpha^e)/(alpha^e + 1)` with `e` the even floor of `m`.
pub fn polar_value<T: Scalar>(m: usize, alpha: &T) -> T {
    let h = alpha.powi(half(m));
    let e = alpha.powi(even_floor(m));
    (T::one() + T::from_i64(2) * h - &e) / (e + T::one())
}

/// `3 / polar_value(m, alpha)`.
pub fn poii_mandatory_bound<T: Scalar>(m: usize, alpha: &T) -> T {
    T::from_i64(3) / polar_value(m, alpha)
}

/// `1 + 2 alpha^floor(m/2)`: the voluntary certificate's objective.
pub fn voluntary_polar_bound<T: Scalar>(m: usize, alpha: &T) -> T {
    T::one() + T::from_i64(2) * alpha.powi(half(m))
}

/// `3 / (2 alpha^floor(m/2) + 1)`.
pub fn poii_voluntary_bound<T: Scalar>(m: usize, alpha: &T) -> T {
    T::from_i64(3) / voluntary_polar_bound(m, alpha)
}
