use rayon::prelude::*;

use super::{argmin, distortion_all, ExtendedValue};
use crate::error::{Error, Result};
use crate::profile::{Intensity, Profile};
use crate::scalar::Scalar;

/// Default cap on the number of intensity assignments enumerated.
pub const DEFAULT_BUDGET: u128 = 4096;

/// Best alternative when only the rankings are known.
#[derive(Debug, Clone, PartialEq)]
pub struct ObliviousOptimum<T> {
    pub alternative: usize,
    /// Its worst ratio to the intensity-aware optimum over all flag assignments.
    pub worst_poii: ExtendedValue<T>,
    /// The same worst ratio for every alternative.
    pub per_alternative: Vec<ExtendedValue<T>>,
    /// Number of assignments evaluated.
    pub assignments: u128,
}

/// The two optima of one election and the price of ignoring its intensities.
#[derive(Debug, Clone, PartialEq)]
pub struct PoiiReport<T> {
    pub oblivious: usize,
    pub aware: usize,
    pub oblivious_distortion: T,
    pub aware_distortion: T,
    pub value: T,
}

fn flags(code: u128, len: usize) -> Vec<Intensity> {
    (0..len)
        .map(|j| if code >> j & 1 == 1 { Intensity::Intense } else { Intensity::Mild })
        .collect()
}

/// Ratios `dist(a) / dist(opt)` for one election, or `None` if no metric fits it.
fn ratios<T: Scalar>(profile: &Profile<T>) -> Result<Option<Vec<ExtendedValue<T>>>> {
    let d = match distortion_all(profile) {
        Ok(d) => d,
        Err(Error::DegenerateProfile) => return Ok(None),
        Err(e) => return Err(e),
    };
    let best = d[argmin(&d)].clone();
    let ExtendedValue::Finite(best) = best else { return Err(Error::InfinitePoII) };
    Ok(Some(
        d.into_iter()
            .map(|v| match v {
                ExtendedValue::Finite(v) => ExtendedValue::Finite(v / &best),
                inf => inf,
            })
            .collect(),
    ))
}

/// Alternative minimising the worst-case ratio to the intensity-aware optimum,
/// over every way of attaching flags to the profile's rankings.
///
/// The profile's own flags are ignored. Enumerates `2^(n(m-1))` elections and
/// fails with [`Error::BudgetExceeded`] when that exceeds `budget`.
pub fn intensity_oblivious_opt<T: Scalar>(profile: &Profile<T>, budget: u128) -> Result<ObliviousOptimum<T>> {
    let n = profile.num_agents();
    let m = profile.num_alternatives();
    let per_agent = m - 1;
    let bits = n * per_agent;
    let required = if bits >= 128 { u128::MAX } else { 1u128 << bits };
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if m == 1 {
        let one = ExtendedValue::Finite(T::one());
        return Ok(ObliviousOptimum { alternative: 0, worst_poii: one.clone(), per_alternative: vec![one], assignments: 1 });
    }
    let mask = (1u128 << per_agent) - 1;
    let results: Vec<Result<Option<Vec<ExtendedValue<T>>>>> = (0..required)
        .into_par_iter()
        .map(|code| {
            let prefs = profile
                .preferences()
                .iter()
                .enumerate()
                .map(|(i, p)| p.with_intensities(flags(code >> (i * per_agent) & mask, per_agent)))
                .collect::<Result<Vec<_>>>()?;
            ratios(&profile.with_preferences(prefs)?)
        })
        .collect();
    let mut worst: Option<Vec<ExtendedValue<T>>> = None;
    for r in results {
        let Some(r) = r? else { continue };
        worst = Some(match worst {
            None => r,
            Some(w) => w.into_iter().zip(r).map(|(a, b)| a.max(b)).collect(),
        });
    }
    let worst = worst.ok_or(Error::DegenerateProfile)?;
    let alternative = argmin(&worst);
    Ok(ObliviousOptimum {
        alternative,
        worst_poii: worst[alternative].clone(),
        per_alternative: worst,
        assignments: required,
    })
}

/// Both optima of the election and the ratio of their distortions.
pub fn poii_report<T: Scalar>(profile: &Profile<T>, budget: u128) -> Result<PoiiReport<T>> {
    let ob = intensity_oblivious_opt(profile, budget)?.alternative;
    let d = distortion_all(profile)?;
    let aware = argmin(&d);
    let (ExtendedValue::Finite(num), ExtendedValue::Finite(den)) = (d[ob].clone(), d[aware].clone()) else {
        return Err(Error::InfinitePoII);
    };
    Ok(PoiiReport {
        oblivious: ob,
        aware,
        value: num.clone() / &den,
        oblivious_distortion: num,
        aware_distortion: den,
    })
}

/// `dist(opt_ob) / dist(opt_aw)` on the profile's own flags.
pub fn poii<T: Scalar>(profile: &Profile<T>, budget: u128) -> Result<T> {
    Ok(poii_report(profile, budget)?.value)
}
