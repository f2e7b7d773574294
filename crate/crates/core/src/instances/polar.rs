//! The polar election: one agent with intense flags on its first half, the
//! other ranking the second half first, both ending with the two halves swapped.

use std::collections::BTreeMap;

use crate::distortion::{CertificateSetting, DualCertificate, DualVariable};
use crate::error::{Error, Result};
use crate::metric::MetricMatrix;
use crate::profile::{ElicitationMode, Intensity, IntensivePreference, Profile};
use crate::scalar::Scalar;

/// Rankings `(a1..am)` and `(a_{h+1}..a_{2h}, a1..ah)`, with `a_m` appended last when `m` is odd.
pub(crate) fn polar_rankings(m: usize) -> (Vec<usize>, Vec<usize>) {
    let h = m / 2;
    let first: Vec<usize> = (0..m).collect();
    let mut second: Vec<usize> = (h..2 * h).chain(0..h).collect();
    if m % 2 == 1 {
        second.push(m - 1);
    }
    (first, second)
}

/// `count` intense flags followed by mild ones, `len` in total.
pub(crate) fn leading_intense(count: usize, len: usize) -> Vec<Intensity> {
    (0..len).map(|j| if j < count { Intensity::Intense } else { Intensity::Mild }).collect()
}

/// The polar election; the first agent flags its first `floor(m/2)` pairs intense.
pub fn polar_profile<T: Scalar>(m: usize, alpha: T, mode: ElicitationMode) -> Result<Profile<T>> {
    if m < 2 {
        return Err(Error::ParameterOutOfRange(format!("polar election needs m >= 2, got {m}")));
    }
    let (r1, r2) = polar_rankings(m);
    let prefs = vec![
        IntensivePreference::new(r1, leading_intense(m / 2, m - 1))?,
        IntensivePreference::mild(r2)?,
    ];
    Profile::with_default_names(prefs, alpha, mode)
}

/// Adversarial metric for `a1` with `sc(a_{h+1}) = 1`.
pub fn polar_witness<T: Scalar>(m: usize, alpha: &T) -> Result<MetricMatrix<T>> {
    let h = m / 2;
    let me = 2 * h;
    let a = T::one() / alpha;
    let den = a.powi(me as i32) + T::one();
    let (r1, r2) = polar_rankings(m);
    let mut rows = vec![vec![T::zero(); m]; 2];
    for j in 1..=me {
        let (v1, v2) = if j <= h + 1 {
            let hi = a.powi((h + j - 1) as i32);
            let lo = a.powi(j as i32 - 1);
            (hi.clone() - &lo, hi + lo)
        } else {
            let hi = a.powi(me as i32);
            let lo = a.powi(h as i32);
            (hi.clone() - &lo, hi + lo)
        };
        rows[0][r1[j - 1]] = v1 / &den;
        rows[1][r2[j - 1]] = v2 / &den;
    }
    if m % 2 == 1 {
        rows[0][m - 1] = rows[0][r1[m - 2]].clone();
        rows[1][m - 1] = rows[1][r2[m - 2]].clone();
    }
    MetricMatrix::new(rows)
}

fn check_alpha<T: Scalar>(alpha: &T) -> Result<()> {
    if alpha.is_positive() && *alpha < T::one() {
        Ok(())
    } else {
        Err(Error::AlphaOutOfDomain { alpha: alpha.to_string(), domain: "(0, 1)" })
    }
}

/// Dual solution proving that `a1`'s mandatory distortion is at most the polar value.
///
/// For odd `m` the certificate of `m - 1` is reused; the appended alternative gets no weight.
pub fn mandatory_polar_certificate<T: Scalar>(m: usize, alpha: &T) -> Result<DualCertificate<T>> {
    check_alpha(alpha)?;
    if m < 2 {
        return Err(Error::ParameterOutOfRange(format!("m >= 2 required, got {m}")));
    }
    let h = m / 2;
    let a = T::one() / alpha;
    let y = T::from_i64(2) / (a.powi(2 * h as i32) + T::one());
    let mut vars = BTreeMap::new();
    for i in 0..h {
        vars.insert(DualVariable::Gap { agent: 1, position: h - 1 - i }, y.clone() * a.powi(i as i32));
        vars.insert(DualVariable::Gap { agent: 0, position: h - 1 - i }, y.clone() * a.powi((h + i) as i32));
    }
    vars.insert(DualVariable::Triangle { agent: 1, other: 0, alt: 0, via: h }, T::one() - &y);
    vars.insert(DualVariable::Optimality { alt: h }, y * (a.powi(h as i32) - T::one()) + T::one());
    Ok(DualCertificate { setting: CertificateSetting::MandatoryPolar, m, alpha: alpha.clone(), variables: vars })
}

/// Dual solution bounding `a1`'s voluntary distortion by `1 + 2 alpha^floor(m/2)`.
pub fn voluntary_polar_certificate<T: Scalar>(m: usize, alpha: &T) -> Result<DualCertificate<T>> {
    check_alpha(alpha)?;
    if m < 2 {
        return Err(Error::ParameterOutOfRange(format!("m >= 2 required, got {m}")));
    }
    let h = m / 2;
    let a = T::one() / alpha;
    let x = T::from_i64(2) * alpha.powi(h as i32);
    let mut vars = BTreeMap::new();
    for i in 0..h {
        vars.insert(DualVariable::Gap { agent: 0, position: h - 1 - i }, x.clone() * a.powi(i as i32));
    }
    vars.insert(DualVariable::Triangle { agent: 1, other: 0, alt: 0, via: h }, T::one());
    vars.insert(DualVariable::Optimality { alt: h }, T::one() + x);
    Ok(DualCertificate { setting: CertificateSetting::VoluntaryPolar, m, alpha: alpha.clone(), variables: vars })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distortion::verify_dual_certificate;
    use crate::metric::{check_consistency, check_triangle, ConsistencyMode};
    use crate::rational::{int, ratio};

    #[test]
    fn two_alternative_witness() {
        let w = polar_witness(2, &ratio(1, 2)).unwrap();
        assert_eq!(w.rows(), &[vec![ratio(1, 5), ratio(2, 5)], vec![ratio(6, 5), ratio(3, 5)]]);
    }

    #[test]
    fn certificates_at_two_alternatives() {
        let h = ratio(1, 2);
        assert_eq!(verify_dual_certificate(&mandatory_polar_certificate(2, &h).unwrap()).unwrap(), ratio(7, 5));
        assert_eq!(verify_dual_certificate(&voluntary_polar_certificate(2, &h).unwrap()).unwrap(), int(2));
        assert_eq!(verify_dual_certificate(&voluntary_polar_certificate(4, &h).unwrap()).unwrap(), ratio(3, 2));
    }

    #[test]
    fn negative_multiplier_rejected() {
        let mut c = mandatory_polar_certificate(2, &ratio(1, 2)).unwrap();
        let key = DualVariable::Triangle { agent: 1, other: 0, alt: 0, via: 1 };
        c.variables.insert(key, ratio(-1, 5));
        assert!(matches!(verify_dual_certificate(&c), Err(Error::InfeasibleCertificate(_))));
    }

    #[test]
    fn dropping_a_multiplier_breaks_feasibility() {
        let mut c = mandatory_polar_certificate(4, &ratio(1, 2)).unwrap();
        c.variables.remove(&DualVariable::Gap { agent: 1, position: 0 });
        assert!(matches!(verify_dual_certificate(&c), Err(Error::InfeasibleCertificate(_))));
    }

    #[test]
    fn witnesses_are_consistent() {
        for m in 2..=7 {
            for alpha in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
                let p = polar_profile(m, alpha.clone(), ElicitationMode::Mandatory).unwrap();
                let w = polar_witness(m, &alpha).unwrap();
                assert!(check_triangle(&w).is_empty(), "m={m}");
                assert!(check_consistency(&p, &w, ConsistencyMode::MandatoryClosed).unwrap().is_empty(), "m={m}");
            }
        }
    }
}
