use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::instances::polar_profile;
use crate::profile::{ElicitationMode, Intensity, Profile};
use crate::scalar::Scalar;
use crate::Rational;

/// Which polar LP a certificate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateSetting {
    MandatoryPolar,
    VoluntaryPolar,
}

impl CertificateSetting {
    pub fn mode(self) -> ElicitationMode {
        match self {
            CertificateSetting::MandatoryPolar => ElicitationMode::Mandatory,
            CertificateSetting::VoluntaryPolar => ElicitationMode::Voluntary,
        }
    }
}

/// One row of the adversary LP, named by what it constrains. Indices are zero-based.
///
/// Gap rows are scaled by `1/alpha`: an intense pair reads
/// `d(i,pi(j))/alpha - d(i,pi(j+1)) <= 0`, and under mandatory elicitation a
/// mild pair reads `d(i,pi(j+1)) - d(i,pi(j))/alpha <= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualVariable {
    /// `d(agent,alt) <= d(agent,via) + d(other,via) + d(other,alt)`.
    Triangle { agent: usize, other: usize, alt: usize, via: usize },
    /// `d(agent,pi(position)) <= d(agent,pi(position+1))`.
    Order { agent: usize, position: usize },
    /// The scaled gap row of pair `position`.
    Gap { agent: usize, position: usize },
    /// `sc(alt) = 1` for the forced optimum, `sc(alt) >= 1` otherwise.
    Optimality { alt: usize },
}

impl fmt::Display for DualVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DualVariable::Triangle { agent, other, alt, via } => {
                write!(f, "psi[{},{};a{},a{}]", agent + 1, other + 1, alt + 1, via + 1)
            }
            DualVariable::Order { agent, position } => write!(f, "phi[{};{}]", agent + 1, position + 1),
            DualVariable::Gap { agent, position } => write!(f, "beta[{};{}]", agent + 1, position + 1),
            DualVariable::Optimality { alt } => write!(f, "t[a{}]", alt + 1),
        }
    }
}

/// A dual solution for the polar instance with candidate `a1`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate<T = Rational> {
    pub setting: CertificateSetting,
    pub m: usize,
    pub alpha: T,
    pub variables: BTreeMap<DualVariable, T>,
}

impl<T: Scalar> DualCertificate<T> {
    /// Forced optimum of the polar instance.
    pub fn optimum(&self) -> usize {
        self.m / 2
    }
}

/// Checks the certificate against the dual of the polar LP and returns its objective.
///
/// By weak duality the value bounds the distortion of `a1` on the polar
/// instance from above.
pub fn verify_dual_certificate<T: Scalar>(cert: &DualCertificate<T>) -> Result<T> {
    if !(cert.alpha > T::zero() && cert.alpha < T::one()) {
        return Err(Error::AlphaOutOfDomain { alpha: cert.alpha.to_string(), domain: "(0, 1)" });
    }
    if cert.m < 2 {
        return Err(Error::ParameterOutOfRange(format!("certificate needs m >= 2, got {}", cert.m)));
    }
    let profile = polar_profile(cert.m, cert.alpha.clone(), cert.setting.mode())?;
    verify_dual(&profile, 0, cert.optimum(), &cert.variables)
}

/// Checks `vars` as a dual solution of the adversary LP for candidate `alt`
/// with forced optimum `optimum`, returning the dual objective.
///
/// Dual feasibility means nonnegative multipliers on `<=` rows, nonpositive
/// ones on `>=` rows, and for every distance column a combined coefficient at
/// least the objective's (1 on the candidate's column, 0 elsewhere).
pub fn verify_dual<T: Scalar>(
    profile: &Profile<T>,
    alt: usize,
    optimum: usize,
    vars: &BTreeMap<DualVariable, T>,
) -> Result<T> {
    let n = profile.num_agents();
    let m = profile.num_alternatives();
    let alpha = profile.alpha();
    let fail = |s: String| Err(Error::InfeasibleCertificate(s));
    let mut column = vec![vec![T::zero(); m]; n];
    let mut objective = T::zero();
    for (key, y) in vars {
        let sign_ok = match key {
            DualVariable::Optimality { alt: c } if *c == optimum => true,
            DualVariable::Optimality { .. } => !T::zero().lt_tol(y),
            _ => !y.lt_tol(&T::zero()),
        };
        if !sign_ok {
            return fail(format!("sign of {key} = {y}"));
        }
        match *key {
            DualVariable::Triangle { agent, other, alt: a, via } => {
                if agent >= n || other >= n || agent == other || a >= m || via >= m || a == via {
                    return fail(format!("unknown variable {key}"));
                }
                column[agent][a] += y;
                column[agent][via] -= y;
                column[other][via] -= y;
                column[other][a] -= y;
            }
            DualVariable::Order { agent, position } => {
                if agent >= n || position + 1 >= m {
                    return fail(format!("unknown variable {key}"));
                }
                let pref = &profile.preferences()[agent];
                column[agent][pref.at(position)] += y;
                column[agent][pref.at(position + 1)] -= y;
            }
            DualVariable::Gap { agent, position } => {
                if agent >= n || position + 1 >= m {
                    return fail(format!("unknown variable {key}"));
                }
                if alpha.is_zero() {
                    return fail("gap rows need alpha > 0".into());
                }
                let pref = &profile.preferences()[agent];
                let scaled = y.clone() / alpha;
                let (hi, lo) = (pref.at(position), pref.at(position + 1));
                match (pref.intensities()[position], profile.mode()) {
                    (Intensity::Intense, _) => {
                        column[agent][hi] += &scaled;
                        column[agent][lo] -= y;
                    }
                    (Intensity::Mild, ElicitationMode::Mandatory) => {
                        column[agent][lo] += y;
                        column[agent][hi] -= &scaled;
                    }
                    (Intensity::Mild, ElicitationMode::Voluntary) => {
                        return fail(format!("unknown variable {key}"));
                    }
                }
            }
            DualVariable::Optimality { alt: c } => {
                if c >= m {
                    return fail(format!("unknown variable {key}"));
                }
                for row in column.iter_mut() {
                    row[c] += y;
                }
                objective += y;
            }
        }
    }
    for (i, row) in column.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let need = if c == alt { T::one() } else { T::zero() };
            if v.lt_tol(&need) {
                return fail(format!("column d[{},a{}]: {} < {}", i + 1, c + 1, v, need));
            }
        }
    }
    Ok(objective)
}
