//! Lower-bound constructions bundled with witness metrics, closed-form
//! ratios and dual certificates, plus a verifier for the bundles.

mod bounds;
mod polar;

use std::fmt;
use std::str::FromStr;

pub use bounds::{
    intense_bound, line_general_bound, poii_mandatory_bound, poii_voluntary_bound, polar_value, reversed_bound,
    two_alt_mild_bound, voluntary_polar_bound,
};
pub use polar::{mandatory_polar_certificate, polar_profile, polar_witness, voluntary_polar_certificate};

use crate::distortion::{
    distortion_all, intensity_oblivious_opt, verify_dual_certificate, DualCertificate, ExtendedValue, ObliviousOptimum,
    DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::line::{worst_case_metrics, LineCounts, LineEmbedding};
use crate::metric::{check_consistency, check_triangle, cost_ratio, ConsistencyMode, MetricMatrix};
use crate::profile::{ElicitationMode, Intensity, IntensivePreference, Profile};
use crate::rational::Rational;
use crate::scalar::Scalar;
use polar::{leading_intense, polar_rankings};

/// The available constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceKind {
    GeneralReversed,
    GeneralIntense,
    LineTwoAltMild,
    LineTwoAltIntense,
    LineGeneral,
    Polar,
    PoiiMandatory,
    PoiiVoluntary,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 8] = [
        InstanceKind::GeneralReversed,
        InstanceKind::GeneralIntense,
        InstanceKind::LineTwoAltMild,
        InstanceKind::LineTwoAltIntense,
        InstanceKind::LineGeneral,
        InstanceKind::Polar,
        InstanceKind::PoiiMandatory,
        InstanceKind::PoiiVoluntary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::GeneralReversed => "general-reversed",
            InstanceKind::GeneralIntense => "general-intense",
            InstanceKind::LineTwoAltMild => "line-two-alt-mild",
            InstanceKind::LineTwoAltIntense => "line-two-alt-intense",
            InstanceKind::LineGeneral => "line-general",
            InstanceKind::Polar => "polar",
            InstanceKind::PoiiMandatory => "poii-mandatory",
            InstanceKind::PoiiVoluntary => "poii-voluntary",
        }
    }

    pub fn is_poii(self) -> bool {
        matches!(self, InstanceKind::PoiiMandatory | InstanceKind::PoiiVoluntary)
    }

    pub fn is_line(self) -> bool {
        matches!(self, InstanceKind::LineTwoAltMild | InstanceKind::LineTwoAltIntense | InstanceKind::LineGeneral)
    }

    /// Whether `m` is admissible for this construction.
    pub fn supports(self, m: usize) -> bool {
        match self {
            InstanceKind::LineTwoAltMild | InstanceKind::LineTwoAltIntense => m == 2,
            _ => m >= 2,
        }
    }

    fn alpha_may_be_one(self) -> bool {
        matches!(self, InstanceKind::GeneralIntense | InstanceKind::LineTwoAltIntense | InstanceKind::LineGeneral)
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name().replace('-', "") == key)
            .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown instance kind `{s}`")))
    }
}

/// Construction parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceParams<T> {
    pub m: usize,
    pub k: Option<usize>,
    pub alpha: T,
}

/// A generated construction with everything needed to re-check it.
#[derive(Debug, Clone)]
pub struct LowerBoundInstance<T = Rational> {
    pub kind: InstanceKind,
    pub params: InstanceParams<T>,
    pub profile: Profile<T>,
    pub witness_metric: Option<MetricMatrix<T>>,
    /// Positions on the line for the line constructions.
    pub embedding: Option<LineEmbedding<T>>,
    pub consistency: ConsistencyMode,
    /// `(chosen, optimum)`: the witness makes `sc(chosen)/sc(optimum)` large.
    pub witness_pair: (usize, usize),
    pub witness_ratio: T,
    pub expected_ratio: T,
    pub certificate: Option<DualCertificate<T>>,
    /// Alternative whose distortion equals the polar value (PoII kinds).
    pub reference: Option<usize>,
    /// Enumeration result that fixed the flags (PoII kinds).
    pub oblivious: Option<ObliviousOptimum<T>>,
}

/// Builds a construction, enumerating at most [`DEFAULT_BUDGET`] flag assignments.
pub fn generate<T: Scalar>(kind: InstanceKind, m: usize, k: Option<usize>, alpha: T) -> Result<LowerBoundInstance<T>> {
    generate_with_budget(kind, m, k, alpha, DEFAULT_BUDGET)
}

pub fn generate_with_budget<T: Scalar>(
    kind: InstanceKind,
    m: usize,
    k: Option<usize>,
    alpha: T,
    budget: u128,
) -> Result<LowerBoundInstance<T>> {
    if !kind.supports(m) {
        return Err(Error::ParameterOutOfRange(format!("{kind} does not support m = {m}")));
    }
    let top_ok = if kind.alpha_may_be_one() { alpha <= T::one() } else { alpha < T::one() };
    if !(alpha.is_positive() && top_ok) {
        let domain = if kind.alpha_may_be_one() { "(0, 1]" } else { "(0, 1)" };
        return Err(Error::AlphaOutOfDomain { alpha: alpha.to_string(), domain });
    }
    match (kind, k) {
        (InstanceKind::GeneralIntense, None) => {
            return Err(Error::ParameterOutOfRange(format!("{kind} needs k")));
        }
        (InstanceKind::GeneralIntense, Some(k)) if k == 0 || k > m / 2 => {
            return Err(Error::ParameterOutOfRange(format!("k = {k} outside 1..={}", m / 2)));
        }
        (InstanceKind::GeneralIntense, _) | (_, None) => {}
        (_, Some(_)) => return Err(Error::ParameterOutOfRange(format!("{kind} takes no k"))),
    }
    let params = InstanceParams { m, k, alpha: alpha.clone() };
    let base = |profile, witness: MetricMatrix<T>, pair: (usize, usize), expected: T| -> Result<LowerBoundInstance<T>> {
        let witness_ratio = cost_ratio(&witness, pair.0, pair.1)
            .ok_or_else(|| Error::ParameterOutOfRange("witness optimum has zero cost".into()))?;
        Ok(LowerBoundInstance {
            kind,
            params: params.clone(),
            profile,
            witness_metric: Some(witness),
            embedding: None,
            consistency: ConsistencyMode::MandatoryClosed,
            witness_pair: pair,
            witness_ratio,
            expected_ratio: expected,
            certificate: None,
            reference: None,
            oblivious: None,
        })
    };
    match kind {
        InstanceKind::GeneralReversed => {
            let (profile, witness) = general_reversed(m, &alpha)?;
            base(profile, witness, (0, m - 1), reversed_bound(m, &alpha))
        }
        InstanceKind::GeneralIntense => {
            let (profile, witness) = general_intense(m, k.unwrap_or(1), &alpha)?;
            base(profile, witness, (m - 1, 0), intense_bound(&alpha))
        }
        InstanceKind::LineTwoAltMild => {
            let counts = LineCounts::new(1, 1, 0, 0)?;
            let (_, far) = worst_case_metrics(&counts, &alpha, 0)?;
            let emb = far.expect("alpha < 1 admits the second placement");
            let mut inst = base(counts.to_profile(alpha.clone())?, emb.metric(), (0, 1), two_alt_mild_bound(&alpha))?;
            inst.embedding = Some(emb);
            Ok(inst)
        }
        InstanceKind::LineTwoAltIntense => {
            let counts = LineCounts::new(0, 0, 1, 1)?;
            let far = T::one() + T::one() / &alpha;
            let emb = LineEmbedding { agents: vec![T::one(), far.clone()], alternatives: vec![T::zero(), far] };
            let mut inst = base(counts.to_profile(alpha.clone())?, emb.metric(), (0, 1), intense_bound(&alpha))?;
            inst.embedding = Some(emb);
            Ok(inst)
        }
        InstanceKind::LineGeneral => {
            let (profile, emb) = line_general(m, &alpha)?;
            let h = m / 2;
            let mut inst = base(profile, emb.metric(), (0, h), line_general_bound(m, &alpha))?;
            inst.embedding = Some(emb);
            Ok(inst)
        }
        InstanceKind::Polar => {
            let profile = polar_profile(m, alpha.clone(), ElicitationMode::Mandatory)?;
            let mut inst = base(profile, polar_witness(m, &alpha)?, (0, m / 2), polar_value(m, &alpha))?;
            inst.certificate = Some(mandatory_polar_certificate(m, &alpha)?);
            Ok(inst)
        }
        InstanceKind::PoiiMandatory | InstanceKind::PoiiVoluntary => {
            let mode = if kind == InstanceKind::PoiiMandatory { ElicitationMode::Mandatory } else { ElicitationMode::Voluntary };
            let p = poii_instance(m, &alpha, mode, budget)?;
            let (expected, certificate, consistency) = match mode {
                ElicitationMode::Mandatory => (poii_mandatory_bound(m, &alpha), None, ConsistencyMode::MandatoryClosed),
                ElicitationMode::Voluntary => (
                    poii_voluntary_bound(m, &alpha),
                    Some(voluntary_polar_certificate(m, &alpha)?),
                    ConsistencyMode::Voluntary,
                ),
            };
            let mut inst = base(p.profile, p.witness, (p.oblivious.alternative, p.reference), expected)?;
            inst.consistency = consistency;
            inst.certificate = certificate;
            inst.reference = Some(p.reference);
            inst.oblivious = Some(p.oblivious);
            Ok(inst)
        }
    }
}

fn general_reversed<T: Scalar>(m: usize, alpha: &T) -> Result<(Profile<T>, MetricMatrix<T>)> {
    let h = m / 2;
    let a = T::one() / alpha;
    let unit = T::from_i64(2) / (a.powi(h as i32) - T::one());
    let forward: Vec<usize> = (0..m).collect();
    let backward: Vec<usize> = (0..m).rev().collect();
    let second = (0..m)
        .map(|b| {
            let rank = m - 1 - b;
            a.powi(rank.min(h) as i32) * &unit
        })
        .collect();
    let witness = MetricMatrix::new(vec![vec![T::one(); m], second])?;
    let profile = Profile::with_default_names(
        vec![IntensivePreference::mild(forward)?, IntensivePreference::mild(backward)?],
        alpha.clone(),
        ElicitationMode::Mandatory,
    )?;
    Ok((profile, witness))
}

fn general_intense<T: Scalar>(m: usize, k: usize, alpha: &T) -> Result<(Profile<T>, MetricMatrix<T>)> {
    let flags: Vec<Intensity> =
        (0..m - 1).map(|j| if j + 1 == k { Intensity::Intense } else { Intensity::Mild }).collect();
    let a = T::one() / alpha;
    let first = (0..m).map(|b| if b < k { T::zero() } else { a.clone() + T::one() }).collect();
    let second = (0..m).map(|b| if m - b <= k { T::one() } else { a.clone() }).collect();
    let profile = Profile::with_default_names(
        vec![
            IntensivePreference::new((0..m).collect(), flags.clone())?,
            IntensivePreference::new((0..m).rev().collect(), flags)?,
        ],
        alpha.clone(),
        ElicitationMode::Mandatory,
    )?;
    Ok((profile, MetricMatrix::new(vec![first, second])?))
}

/// Alternatives `a1..ah`, then `b1..bh`, then `c` when `m` is odd; the names follow that grouping.
fn line_general<T: Scalar>(m: usize, alpha: &T) -> Result<(Profile<T>, LineEmbedding<T>)> {
    let h = m / 2;
    let odd = m % 2 == 1;
    let big = alpha.powi(-(h as i32));
    let i2 = T::from_i64(2) * &big;
    let mut alternatives: Vec<T> = vec![T::zero(); h];
    alternatives.extend((0..h).map(|j| i2.clone() + T::from_i64(2) * alpha.powi(-(j as i32))));
    let agents = vec![big.clone() + T::one(), i2];
    let a_group: Vec<usize> = (0..h).collect();
    let b_group: Vec<usize> = (h..2 * h).collect();
    let mut r1: Vec<usize> = a_group.iter().chain(&b_group).copied().collect();
    let mut r2: Vec<usize> = b_group.iter().chain(&a_group).copied().collect();
    let mut flags = vec![Intensity::Mild; 2 * h - 1];
    let mut names: Vec<String> =
        (1..=h).map(|j| format!("a{j}")).chain((1..=h).map(|j| format!("b{j}"))).collect();
    if odd {
        let right = alternatives[2 * h - 1].clone();
        alternatives.push(right.clone() + right / alpha);
        r1.push(2 * h);
        r2.push(2 * h);
        flags.push(Intensity::Intense);
        names.push("c".into());
    }
    let profile = Profile::new(
        names,
        vec![IntensivePreference::new(r1, flags.clone())?, IntensivePreference::new(r2, flags)?],
        alpha.clone(),
        ElicitationMode::Mandatory,
    )?;
    Ok((profile, LineEmbedding { agents, alternatives }))
}

struct PoiiParts<T> {
    profile: Profile<T>,
    witness: MetricMatrix<T>,
    reference: usize,
    oblivious: ObliviousOptimum<T>,
}

fn poii_instance<T: Scalar>(m: usize, alpha: &T, mode: ElicitationMode, budget: u128) -> Result<PoiiParts<T>> {
    let h = m / 2;
    let (r1, r2) = polar_rankings(m);
    let rankings_only = Profile::with_default_names(
        vec![IntensivePreference::mild(r1.clone())?, IntensivePreference::mild(r2.clone())?],
        alpha.clone(),
        mode,
    )?;
    let oblivious = intensity_oblivious_opt(&rankings_only, budget)?;
    let ob = oblivious.alternative;
    let two = T::from_i64(2);
    let near_far = |rank_of: &dyn Fn(usize) -> usize| -> Vec<T> {
        (0..m).map(|b| if rank_of(b) < h { T::zero() } else { two.clone() }).collect()
    };
    let (prefs, rows, reference) = if ob >= h {
        let prefs = vec![
            IntensivePreference::new(r1, leading_intense(h, m - 1))?,
            IntensivePreference::mild(r2)?,
        ];
        (prefs, vec![near_far(&|b| b), vec![T::one(); m]], 0)
    } else {
        let pos2 = |b: usize| r2.iter().position(|&x| x == b).expect("ranking covers all alternatives");
        let near = near_far(&pos2);
        let prefs = vec![
            IntensivePreference::mild(r1)?,
            IntensivePreference::new(r2.clone(), leading_intense(h, m - 1))?,
        ];
        (prefs, vec![vec![T::one(); m], near], h)
    };
    Ok(PoiiParts {
        profile: Profile::with_default_names(prefs, alpha.clone(), mode)?,
        witness: MetricMatrix::new(rows)?,
        reference,
        oblivious,
    })
}

/// One itemised outcome of [`verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: {} ({})", c.name, if c.passed { "OK" } else { "FAILED" }, c.detail)?;
        }
        Ok(())
    }
}

/// Re-checks a bundle: witness feasibility, the witness ratio, and the LP and
/// certificate values that apply to its kind.
///
/// Failed checks are itemised in the report; errors are reserved for
/// computations that cannot run at all.
pub fn verify<T: Scalar>(instance: &LowerBoundInstance<T>) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let profile = &instance.profile;
    let expected = &instance.expected_ratio;
    let (chosen, optimum) = instance.witness_pair;

    if let Some(w) = &instance.witness_metric {
        let tri = check_triangle(w);
        report.push("triangle", tri.is_empty(), format!("{} violations", tri.len()));
        let cons = check_consistency(profile, w, instance.consistency)?;
        report.push("consistency", cons.is_empty(), format!("{} violations", cons.len()));
        if let Some(emb) = &instance.embedding {
            report.push("embedding", emb.metric() == *w, "witness equals the line distances".into());
        }
        let ratio = cost_ratio(w, chosen, optimum);
        let ok = ratio.as_ref().is_some_and(|r| r.eq_tol(&instance.witness_ratio));
        let shown = ratio.map_or("undefined".to_string(), |r| r.to_string());
        report.push("witness ratio", ok, format!("sc ratio {shown}, recorded {}", instance.witness_ratio));
    }

    let d = distortion_all(profile)?;
    let finite = |v: &ExtendedValue<T>| v.finite().cloned();
    match instance.kind {
        InstanceKind::GeneralReversed
        | InstanceKind::GeneralIntense
        | InstanceKind::LineTwoAltMild
        | InstanceKind::LineTwoAltIntense
        | InstanceKind::LineGeneral => {
            report.push(
                "expected ratio",
                instance.witness_ratio.eq_tol(expected),
                format!("witness {} vs closed form {expected}", instance.witness_ratio),
            );
            let worst_best = d.iter().cloned().fold(ExtendedValue::PositiveInfinity, ExtendedValue::min);
            let ok = match &worst_best {
                ExtendedValue::Finite(v) => expected.le_tol(v),
                ExtendedValue::PositiveInfinity => true,
            };
            report.push("lp lower bound", ok, format!("min distortion {worst_best} >= {expected}"));
        }
        InstanceKind::Polar => {
            report.push(
                "expected ratio",
                instance.witness_ratio.eq_tol(expected),
                format!("witness {} vs closed form {expected}", instance.witness_ratio),
            );
            let lp = finite(&d[0]);
            report.push(
                "lp distortion",
                lp.as_ref().is_some_and(|v| v.eq_tol(expected)),
                format!("dist(a1) = {}", d[0]),
            );
            push_certificate(&mut report, instance, expected, true);
        }
        InstanceKind::PoiiMandatory | InstanceKind::PoiiVoluntary => {
            let m = instance.params.m;
            let alpha = &instance.params.alpha;
            let three = T::from_i64(3);
            let ob = finite(&d[chosen]);
            report.push(
                "oblivious distortion",
                ob.as_ref().is_some_and(|v| v.eq_tol(&three)),
                format!("dist({}) = {}", profile.alternative_names()[chosen], d[chosen]),
            );
            let reference = instance.reference.unwrap_or(optimum);
            let refd = finite(&d[reference]);
            let ref_name = &profile.alternative_names()[reference];
            if instance.kind == InstanceKind::PoiiMandatory {
                let polar = polar_value(m, alpha);
                report.push(
                    "reference distortion",
                    refd.as_ref().is_some_and(|v| v.eq_tol(&polar)),
                    format!("dist({ref_name}) = {} vs {polar}", d[reference]),
                );
            } else if let Some(cert) = &instance.certificate {
                let bound = verify_dual_certificate(cert).ok();
                let ok = match (&refd, &bound) {
                    (Some(v), Some(b)) => v.le_tol(b),
                    _ => false,
                };
                let shown = bound.as_ref().map_or("invalid".to_string(), |b| b.to_string());
                report.push("reference distortion", ok, format!("dist({ref_name}) = {} <= {shown}", d[reference]));
                push_certificate(&mut report, instance, &voluntary_polar_bound(m, alpha), false);
            }
            let best = d.iter().cloned().fold(ExtendedValue::PositiveInfinity, ExtendedValue::min);
            let value = match (ob, best) {
                (Some(num), ExtendedValue::Finite(den)) if den.is_positive() => Some(num / den),
                _ => None,
            };
            let ok = value.as_ref().is_some_and(|v| expected.le_tol(v));
            let shown = value.map_or("undefined".to_string(), |v| v.to_string());
            report.push("poii bound", ok, format!("poii {shown} >= {expected}"));
        }
    }
    Ok(report)
}

fn push_certificate<T: Scalar>(report: &mut VerificationReport, instance: &LowerBoundInstance<T>, target: &T, tight: bool) {
    let Some(cert) = &instance.certificate else {
        report.push("certificate", false, "missing".into());
        return;
    };
    match verify_dual_certificate(cert) {
        Ok(v) => {
            let ok = if tight { v.eq_tol(target) } else { v.le_tol(target) };
            report.push("certificate", ok, format!("dual objective {v} vs {target}"));
        }
        Err(e) => report.push("certificate", false, e.to_string()),
    }
}
