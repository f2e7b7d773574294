//! Two alternatives on a line: closed-form worst-case distortion, the rule
//! that picks the alternative with the smaller one, and the witnesses.

use rayon::prelude::*;

use crate::distortion::ExtendedValue;
use crate::error::{Error, Result};
use crate::metric::MetricMatrix;
use crate::profile::{default_names, ElicitationMode, Intensity, IntensivePreference, Profile};
use crate::scalar::Scalar;

/// How many agents hold each of the four possible two-alternative ballots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineCounts {
    /// `a1 > a2`
    pub n1: u64,
    /// `a2 > a1`
    pub n2: u64,
    /// `a1 >> a2`
    pub n3: u64,
    /// `a2 >> a1`
    pub n4: u64,
}

impl LineCounts {
    pub fn new(n1: u64, n2: u64, n3: u64, n4: u64) -> Result<Self> {
        if n1 + n2 + n3 + n4 == 0 {
            return Err(Error::ParameterOutOfRange("electorate must be nonempty".into()));
        }
        Ok(Self { n1, n2, n3, n4 })
    }

    pub fn total(&self) -> u64 {
        self.n1 + self.n2 + self.n3 + self.n4
    }

    /// The counts seen from `a2`'s side.
    pub fn swapped(&self) -> Self {
        Self { n1: self.n2, n2: self.n1, n3: self.n4, n4: self.n3 }
    }

    /// Counts from the side of `target` (0 or 1).
    pub fn toward(&self, target: usize) -> Self {
        if target == 0 {
            *self
        } else {
            self.swapped()
        }
    }

    /// Mandatory profile listing the four blocks in order.
    pub fn to_profile<T: Scalar>(&self, alpha: T) -> Result<Profile<T>> {
        let mut prefs = Vec::new();
        for (count, ranking, flag) in [
            (self.n1, [0, 1], Intensity::Mild),
            (self.n2, [1, 0], Intensity::Mild),
            (self.n3, [0, 1], Intensity::Intense),
            (self.n4, [1, 0], Intensity::Intense),
        ] {
            let p = IntensivePreference::new(ranking.to_vec(), vec![flag])?;
            prefs.extend(std::iter::repeat_n(p, count as usize));
        }
        Profile::new(default_names(2), prefs, alpha, ElicitationMode::Mandatory)
    }
}

/// Counts of the four ballot types.
pub fn classify_counts<T: Scalar>(profile: &Profile<T>) -> Result<LineCounts> {
    if profile.num_alternatives() != 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "needs exactly two alternatives, got {}",
            profile.num_alternatives()
        )));
    }
    let mut c = LineCounts { n1: 0, n2: 0, n3: 0, n4: 0 };
    for p in profile.preferences() {
        match (p.top(), p.intensities()[0]) {
            (0, Intensity::Mild) => c.n1 += 1,
            (_, Intensity::Mild) => c.n2 += 1,
            (0, Intensity::Intense) => c.n3 += 1,
            (_, Intensity::Intense) => c.n4 += 1,
        }
    }
    Ok(c)
}

fn check_alpha<T: Scalar>(alpha: &T) -> Result<()> {
    if alpha.is_positive() && *alpha <= T::one() {
        Ok(())
    } else {
        Err(Error::AlphaOutOfDomain { alpha: alpha.to_string(), domain: "(0, 1]" })
    }
}

/// Coefficients of the two branches for a fixed `alpha`.
#[derive(Debug, Clone)]
struct Coefficients<T> {
    mild: T,
    inv2: T,
    two: T,
    far: T,
    /// Mild-against coefficients of the second branch; absent at `alpha = 1`.
    beyond: Option<(T, T)>,
}

impl<T: Scalar> Coefficients<T> {
    fn new(alpha: &T) -> Result<Self> {
        check_alpha(alpha)?;
        let one = T::one();
        let two = T::from_i64(2);
        let inv = one.clone() / alpha;
        let mild = inv.clone() + &one;
        let inv2 = two.clone() * &inv;
        let beyond = (*alpha < one).then(|| {
            let spread = mild.clone() / (inv.clone() - &one);
            (inv2.clone() * &spread, two.clone() * &spread)
        });
        Ok(Self { far: two.clone() + &inv2, mild, inv2, two, beyond })
    }

    fn branches(&self, c: &LineCounts) -> (ExtendedValue<T>, Option<ExtendedValue<T>>) {
        let [n1, n2, n3, n4] = [c.n1, c.n2, c.n3, c.n4].map(|v| T::from_i64(v as i64));
        let shared_num = self.mild.clone() * &n1 + self.two.clone() * &n3 + self.far.clone() * &n4;
        let shared_den = self.mild.clone() * &n1 + self.inv2.clone() * &n3;
        let first = ExtendedValue::ratio(
            shared_num.clone() + self.inv2.clone() * &n2,
            shared_den.clone() + self.two.clone() * &n2,
        );
        let second = self
            .beyond
            .as_ref()
            .map(|(bn, bd)| ExtendedValue::ratio(shared_num + bn.clone() * &n2, shared_den + bd.clone() * &n2));
        (first, second)
    }

    fn eval(&self, c: &LineCounts) -> ExtendedValue<T> {
        let (a, b) = self.branches(c);
        let floor = ExtendedValue::Finite(T::one());
        match b {
            Some(b) => a.max(b).max(floor),
            None => a.max(floor),
        }
    }
}

/// The two unclipped branch ratios for `a1`; the second is absent at `alpha = 1`.
pub fn d_branches<T: Scalar>(counts: &LineCounts, alpha: &T) -> Result<(ExtendedValue<T>, Option<ExtendedValue<T>>)> {
    Ok(Coefficients::new(alpha)?.branches(counts))
}

/// Worst-case line distortion of `a1`: the larger branch, clipped below at 1.
pub fn eval_d<T: Scalar>(counts: &LineCounts, alpha: &T) -> Result<ExtendedValue<T>> {
    Ok(Coefficients::new(alpha)?.eval(counts))
}

/// The alternative with the smaller worst-case distortion, `a1` on ties.
pub fn tal_from_counts<T: Scalar>(counts: &LineCounts, alpha: &T) -> Result<(usize, ExtendedValue<T>)> {
    let co = Coefficients::new(alpha)?;
    let d1 = co.eval(counts);
    let d2 = co.eval(&counts.swapped());
    Ok(if d1 <= d2 { (0, d1) } else { (1, d2) })
}

/// Runs the two-alternative line rule on a profile.
pub fn tal_winner<T: Scalar>(profile: &Profile<T>) -> Result<(usize, ExtendedValue<T>)> {
    tal_from_counts(&classify_counts(profile)?, profile.alpha())
}

/// Points on the real line; distances are absolute differences.
#[derive(Debug, Clone, PartialEq)]
pub struct LineEmbedding<T> {
    pub agents: Vec<T>,
    pub alternatives: Vec<T>,
}

impl<T: Scalar> LineEmbedding<T> {
    pub fn metric(&self) -> MetricMatrix<T> {
        let rows = self
            .agents
            .iter()
            .map(|x| self.alternatives.iter().map(|y| (x.clone() - y).abs()).collect())
            .collect();
        MetricMatrix::new(rows).expect("absolute differences are nonnegative")
    }
}

/// The two adversarial placements for `target` (0 or 1).
///
/// The target sits at 0 and the other alternative at `2 + 2/alpha`. Agents
/// appear in the block order of [`LineCounts::to_profile`]. The second
/// placement moves mild opponents past the other alternative and is absent
/// at `alpha = 1`.
pub fn worst_case_metrics<T: Scalar>(
    counts: &LineCounts,
    alpha: &T,
    target: usize,
) -> Result<(LineEmbedding<T>, Option<LineEmbedding<T>>)> {
    if target > 1 {
        return Err(Error::ParameterOutOfRange(format!("target {target} of two alternatives")));
    }
    let co = Coefficients::new(alpha)?;
    let one = T::one();
    let other = co.far.clone();
    let for_mild = co.mild.clone();
    let for_intense = co.two.clone();
    let against_mild = co.inv2.clone();
    let against_intense = other.clone();
    let beyond = (*alpha < one).then(|| {
        let gap = co.two.clone() * (alpha.clone() + &one) / (one.clone() - alpha);
        other.clone() + gap
    });
    let place = |against_mild_at: T| {
        let block = |v: &T, count: u64| std::iter::repeat_n(v.clone(), count as usize);
        // From a1's side: n1/n3 favour a1, n2/n4 favour a2.
        let (f1, f2, f3, f4) = if target == 0 {
            (for_mild.clone(), against_mild_at.clone(), for_intense.clone(), against_intense.clone())
        } else {
            (against_mild_at.clone(), for_mild.clone(), against_intense.clone(), for_intense.clone())
        };
        let agents = block(&f1, counts.n1)
            .chain(block(&f2, counts.n2))
            .chain(block(&f3, counts.n3))
            .chain(block(&f4, counts.n4))
            .collect();
        let alternatives = if target == 0 { vec![T::zero(), other.clone()] } else { vec![other.clone(), T::zero()] };
        LineEmbedding { agents, alternatives }
    };
    Ok((place(against_mild), beyond.map(place)))
}

/// `max((3 - alpha)/(1 + alpha), 2 alpha + 1)`.
pub fn conjectured_bound<T: Scalar>(alpha: &T) -> T {
    let one = T::one();
    let a = (T::from_i64(3) - alpha) / (one.clone() + alpha);
    let b = T::from_i64(2) * alpha + &one;
    if a >= b {
        a
    } else {
        b
    }
}

/// Largest `min(D(a1), D(a2))` over all electorates of one size, for one `alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub alpha: T,
    pub max_min_distortion: ExtendedValue<T>,
    /// First tuple in lexicographic order attaining the maximum.
    pub witness: LineCounts,
    pub conjectured_bound: T,
}

fn best_of<T: Scalar>(co: &Coefficients<T>, total: u64, n1: u64) -> (ExtendedValue<T>, LineCounts) {
    let mut best: Option<(ExtendedValue<T>, LineCounts)> = None;
    for n2 in 0..=total - n1 {
        for n3 in 0..=total - n1 - n2 {
            let c = LineCounts { n1, n2, n3, n4: total - n1 - n2 - n3 };
            let v = co.eval(&c).min(co.eval(&c.swapped()));
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, c));
            }
        }
    }
    best.expect("at least one tuple")
}

/// Sweeps every 4-tuple summing to `total` for each `alpha`.
pub fn conjecture_sweep<T: Scalar>(total: u64, alphas: &[T]) -> Result<Vec<SweepRow<T>>> {
    if total == 0 {
        return Err(Error::ParameterOutOfRange("total must be at least 1".into()));
    }
    alphas
        .par_iter()
        .map(|alpha| {
            let co = Coefficients::new(alpha)?;
            let per_n1: Vec<_> = (0..=total).into_par_iter().map(|n1| best_of(&co, total, n1)).collect();
            let mut best = per_n1[0].clone();
            for cand in per_n1.into_iter().skip(1) {
                if cand.0 > best.0 {
                    best = cand;
                }
            }
            Ok(SweepRow {
                alpha: alpha.clone(),
                max_min_distortion: best.0,
                witness: best.1,
                conjectured_bound: conjectured_bound(alpha),
            })
        })
        .collect()
}

/// CSV with columns `alpha,max_min_distortion,n1,n2,n3,n4,conjectured_bound`.
pub fn sweep_csv<T: Scalar>(rows: &[SweepRow<T>], render: impl Fn(&T) -> String) -> String {
    let mut s = String::from("alpha,max_min_distortion,n1,n2,n3,n4,conjectured_bound\n");
    for r in rows {
        let w = r.witness;
        let v = match &r.max_min_distortion {
            ExtendedValue::Finite(v) => render(v),
            ExtendedValue::PositiveInfinity => "inf".into(),
        };
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            render(&r.alpha),
            v,
            w.n1,
            w.n2,
            w.n3,
            w.n4,
            render(&r.conjectured_bound)
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{check_consistency, check_triangle, cost_ratio, ConsistencyMode};
    use crate::rational::{int, ratio};
    use crate::Rational;

    fn counts(n1: u64, n2: u64, n3: u64, n4: u64) -> LineCounts {
        LineCounts::new(n1, n2, n3, n4).unwrap()
    }

    #[test]
    fn classify_examples() {
        let p = Profile::with_default_names(
            vec![
                IntensivePreference::new(vec![0, 1], vec![Intensity::Intense]).unwrap(),
                IntensivePreference::new(vec![1, 0], vec![Intensity::Mild]).unwrap(),
            ],
            ratio(1, 2),
            ElicitationMode::Mandatory,
        )
        .unwrap();
        assert_eq!(classify_counts(&p).unwrap(), counts(0, 1, 1, 0));
        assert_eq!(classify_counts(&counts(3, 0, 0, 0).to_profile(ratio(1, 2)).unwrap()).unwrap(), counts(3, 0, 0, 0));
        let three = Profile::with_default_names(
            vec![IntensivePreference::mild(vec![0, 1, 2]).unwrap()],
            ratio(1, 2),
            ElicitationMode::Mandatory,
        )
        .unwrap();
        assert!(classify_counts(&three).is_err());
    }

    #[test]
    fn eval_examples() {
        let h = ratio(1, 2);
        let (b1, b2) = d_branches(&counts(1, 1, 0, 0), &h).unwrap();
        assert_eq!(b1, ExtendedValue::Finite(ratio(7, 5)));
        assert_eq!(b2, Some(ExtendedValue::Finite(ratio(15, 9))));
        assert_eq!(eval_d(&counts(1, 1, 0, 0), &h).unwrap(), ExtendedValue::Finite(ratio(5, 3)));
        for a in [ratio(1, 10), h.clone(), ratio(9, 10), int(1)] {
            assert_eq!(eval_d(&counts(1, 0, 0, 0), &a).unwrap(), ExtendedValue::Finite(int(1)));
            assert_eq!(eval_d(&counts(0, 0, 0, 1), &a).unwrap(), ExtendedValue::PositiveInfinity);
        }
        assert!(eval_d(&counts(1, 0, 0, 0), &int(0)).is_err());
    }

    #[test]
    fn tal_examples() {
        let h = ratio(1, 2);
        assert_eq!(tal_from_counts(&counts(1, 1, 0, 0), &h).unwrap(), (0, ExtendedValue::Finite(ratio(5, 3))));
        assert_eq!(tal_from_counts(&counts(0, 1, 0, 0), &h).unwrap(), (1, ExtendedValue::Finite(int(1))));
        assert_eq!(tal_from_counts(&counts(0, 0, 0, 3), &h).unwrap(), (1, ExtendedValue::Finite(int(1))));
        assert_eq!(eval_d(&counts(0, 1, 0, 0), &h).unwrap(), ExtendedValue::Finite(int(2)));
    }

    fn ratio_of(e: &LineEmbedding<Rational>, target: usize) -> ExtendedValue {
        let m = e.metric();
        match cost_ratio(&m, target, 1 - target) {
            Some(r) => ExtendedValue::Finite(r),
            None => ExtendedValue::PositiveInfinity,
        }
    }

    #[test]
    fn worst_case_examples() {
        let h = ratio(1, 2);
        let c = counts(1, 1, 0, 0);
        let (d1, d2) = worst_case_metrics(&c, &h, 0).unwrap();
        let m1 = d1.metric();
        assert_eq!(m1.rows(), &[vec![int(3), int(3)], vec![int(4), int(2)]]);
        assert_eq!(ratio_of(&d1, 0), ExtendedValue::Finite(ratio(7, 5)));
        let d2 = d2.unwrap();
        assert_eq!(d2.metric().rows()[1], vec![int(12), int(6)]);
        assert_eq!(ratio_of(&d2, 0), ExtendedValue::Finite(ratio(15, 9)));
        let (d1, _) = worst_case_metrics(&counts(0, 0, 1, 1), &h, 0).unwrap();
        assert_eq!(ratio_of(&d1, 0), ExtendedValue::Finite(int(2)));
        let (_, none) = worst_case_metrics(&c, &int(1), 0).unwrap();
        assert!(none.is_none());
    }

    #[test]
    fn witnesses_are_consistent_for_both_targets() {
        let c = counts(2, 1, 3, 1);
        for alpha in [ratio(1, 10), ratio(1, 2), ratio(9, 10)] {
            let profile = c.to_profile(alpha.clone()).unwrap();
            for target in 0..2 {
                let (d1, d2) = worst_case_metrics(&c, &alpha, target).unwrap();
                let (b1, b2) = d_branches(&c.toward(target), &alpha).unwrap();
                for (e, b) in [(d1, b1), (d2.unwrap(), b2.unwrap())] {
                    let m = e.metric();
                    assert!(check_triangle(&m).is_empty());
                    assert!(check_consistency(&profile, &m, ConsistencyMode::MandatoryClosed).unwrap().is_empty());
                    assert_eq!(ratio_of(&e, target), b);
                }
            }
        }
    }

    #[test]
    fn small_sweeps() {
        let rows = conjecture_sweep(1, &[ratio(1, 2)]).unwrap();
        assert_eq!(rows[0].max_min_distortion, ExtendedValue::Finite(int(1)));
        let rows = conjecture_sweep(20, &[ratio(1, 2)]).unwrap();
        let v = rows[0].max_min_distortion.finite().unwrap().clone();
        assert!(v <= int(2) && v >= int(2) - ratio(2, 20));
        let csv = sweep_csv(&rows, |v| v.to_string());
        assert!(csv.starts_with("alpha,max_min_distortion,n1,n2,n3,n4,conjectured_bound\n1/2,"));
        assert!(conjecture_sweep::<Rational>(0, &[ratio(1, 2)]).is_err());
    }
}
