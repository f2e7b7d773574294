//! Worst-case distortion of an alternative, computed as a family of LPs.
//!
//! For a candidate `alt` and a forced optimum `b`, the adversary picks
//! distances `x[i][c] >= 0` maximising `sc(alt)` subject to `sc(b) = 1`,
//! `sc(c) >= 1` for every other `c`, the four-point triangle family, and the
//! order and gap rows implied by the ballots. The distortion is the maximum
//! over all `b` whose LP is feasible.

mod certificate;
mod poii;
mod value;

use rayon::prelude::*;

pub use certificate::{verify_dual, verify_dual_certificate, CertificateSetting, DualCertificate, DualVariable};
pub use poii::{intensity_oblivious_opt, poii, poii_report, ObliviousOptimum, PoiiReport, DEFAULT_BUDGET};
pub use value::ExtendedValue;

use crate::error::{Error, Result};
use crate::lp::{solve_many, LpOutcome, LpProblem, Relation, Sense};
use crate::profile::{ElicitationMode, Intensity, Profile};
use crate::scalar::Scalar;

/// Column of `x[i][c]` in the adversary LP.
pub fn variable(agent: usize, alt: usize, m: usize) -> usize {
    agent * m + alt
}

/// Feasible region of the adversary LP when `optimum` is forced to be optimal.
///
/// The objective is left at zero.
pub fn adversary_region<T: Scalar>(profile: &Profile<T>, optimum: usize) -> LpProblem<T> {
    let n = profile.num_agents();
    let m = profile.num_alternatives();
    let nv = n * m;
    let alpha = profile.alpha();
    let mut lp = LpProblem::new(nv, vec![T::zero(); nv], Sense::Maximize);
    let unit = |entries: &[(usize, T)]| {
        let mut row = vec![T::zero(); nv];
        for (j, v) in entries {
            row[*j] += v;
        }
        row
    };
    for i in 0..n {
        for i2 in (0..n).filter(|&x| x != i) {
            for a in 0..m {
                for c in (0..m).filter(|&x| x != a) {
                    let row = unit(&[
                        (variable(i, a, m), T::one()),
                        (variable(i, c, m), -T::one()),
                        (variable(i2, c, m), -T::one()),
                        (variable(i2, a, m), -T::one()),
                    ]);
                    lp.add(row, Relation::Le, T::zero());
                }
            }
        }
    }
    for (i, pref) in profile.preferences().iter().enumerate() {
        for (j, &flag) in pref.intensities().iter().enumerate() {
            let hi = variable(i, pref.at(j), m);
            let lo = variable(i, pref.at(j + 1), m);
            lp.add(unit(&[(hi, T::one()), (lo, -T::one())]), Relation::Le, T::zero());
            match (flag, profile.mode()) {
                (Intensity::Intense, _) => {
                    lp.add(unit(&[(hi, T::one()), (lo, -alpha.clone())]), Relation::Le, T::zero());
                }
                (Intensity::Mild, ElicitationMode::Mandatory) => {
                    lp.add(unit(&[(lo, alpha.clone()), (hi, -T::one())]), Relation::Le, T::zero());
                }
                (Intensity::Mild, ElicitationMode::Voluntary) => {}
            }
        }
    }
    for c in 0..m {
        let row = unit(&(0..n).map(|i| (variable(i, c, m), T::one())).collect::<Vec<_>>());
        let rel = if c == optimum { Relation::Eq } else { Relation::Ge };
        lp.add(row, rel, T::one());
    }
    lp
}

fn cost_objective<T: Scalar>(n: usize, m: usize, alt: usize) -> Vec<T> {
    let mut obj = vec![T::zero(); n * m];
    for i in 0..n {
        obj[variable(i, alt, m)] = T::one();
    }
    obj
}

/// Distortions of the listed alternatives, in order.
pub fn distortions_of<T: Scalar>(profile: &Profile<T>, alts: &[usize]) -> Result<Vec<ExtendedValue<T>>> {
    let n = profile.num_agents();
    let m = profile.num_alternatives();
    if let Some(&bad) = alts.iter().find(|&&a| a >= m) {
        return Err(Error::ParameterOutOfRange(format!("alternative index {bad}")));
    }
    let objectives: Vec<Vec<T>> = alts.iter().map(|&a| cost_objective(n, m, a)).collect();
    let per_optimum: Vec<Vec<LpOutcome<T>>> = (0..m)
        .into_par_iter()
        .map(|b| solve_many(&adversary_region(profile, b), &objectives))
        .collect();
    let mut best: Vec<Option<ExtendedValue<T>>> = vec![None; alts.len()];
    for outcomes in per_optimum {
        for (slot, outcome) in best.iter_mut().zip(outcomes) {
            let v = match outcome {
                LpOutcome::Infeasible => continue,
                LpOutcome::Unbounded => ExtendedValue::PositiveInfinity,
                LpOutcome::Optimal { value, .. } => ExtendedValue::Finite(value),
            };
            if slot.as_ref().is_none_or(|s| v > *s) {
                *slot = Some(v);
            }
        }
    }
    best.into_iter().map(|v| v.ok_or(Error::DegenerateProfile)).collect()
}

/// Distortion of every alternative.
pub fn distortion_all<T: Scalar>(profile: &Profile<T>) -> Result<Vec<ExtendedValue<T>>> {
    let alts: Vec<usize> = (0..profile.num_alternatives()).collect();
    distortions_of(profile, &alts)
}

/// Worst-case ratio between `sc(alt)` and the optimum over all consistent metrics.
pub fn distortion<T: Scalar>(profile: &Profile<T>, alt: usize) -> Result<ExtendedValue<T>> {
    Ok(distortions_of(profile, &[alt])?.remove(0))
}

/// Index of the smallest value, lowest index on ties.
pub fn argmin<T: Scalar>(values: &[ExtendedValue<T>]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// The alternative of least distortion and its distortion.
pub fn intensity_aware_opt<T: Scalar>(profile: &Profile<T>) -> Result<(usize, ExtendedValue<T>)> {
    let all = distortion_all(profile)?;
    let a = argmin(&all);
    Ok((a, all[a].clone()))
}
