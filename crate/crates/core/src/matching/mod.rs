//! Domination graphs, fractional perfect matchings and the voting rules built on them.

mod flow;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::profile::{intensity_rank, ElicitationMode, Profile};
use crate::scalar::Scalar;
use crate::scoring_game::{distortion_bound, rank_vector, robust_bound};
use flow::FlowNetwork;

/// Unit-sum nonnegative positional scores.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoringVector<T> {
    scores: Vec<T>,
}

impl<T: Scalar> ScoringVector<T> {
    pub fn new(scores: Vec<T>) -> Result<Self> {
        if scores.iter().any(|s| s.lt_tol(&T::zero())) {
            return Err(Error::InvalidScoringVector("negative score".into()));
        }
        let total = scores.iter().fold(T::zero(), |a, s| a + s);
        if !total.eq_tol(&T::one()) {
            return Err(Error::InvalidScoringVector(format!("scores sum to {total}")));
        }
        Ok(Self { scores })
    }

    /// `scores` followed by zeros up to length `m`.
    pub fn padded(mut scores: Vec<T>, m: usize) -> Result<Self> {
        if scores.len() > m {
            return Err(Error::InvalidScoringVector(format!("{} scores for {m} positions", scores.len())));
        }
        scores.resize(m, T::zero());
        Self::new(scores)
    }

    /// Plurality scores `(1, 0, ..., 0)`.
    pub fn plurality(m: usize) -> Self {
        let mut s = vec![T::zero(); m];
        s[0] = T::one();
        Self { scores: s }
    }

    pub fn scores(&self) -> &[T] {
        &self.scores
    }
}

/// Bipartite graph between agents and alternatives for one target.
///
/// `(i, c)` is an edge when agent `i` ranks the target weakly above `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct DominationGraph<T> {
    pub target: usize,
    pub agent_weights: Vec<T>,
    pub alt_weights: Vec<T>,
    pub edges: Vec<(usize, usize)>,
}

impl<T: Scalar> DominationGraph<T> {
    pub fn build(profile: &Profile<T>, target: usize, agent_weights: Vec<T>, alt_weights: Vec<T>) -> Self {
        let m = profile.num_alternatives();
        let edges = profile
            .preferences()
            .iter()
            .enumerate()
            .flat_map(|(i, p)| (0..m).filter(move |&c| p.weakly_prefers(target, c)).map(move |c| (i, c)))
            .collect();
        Self { target, agent_weights, alt_weights, edges }
    }
}

/// Outcome of the matching test, with edge weights when feasible.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalMatching<T> {
    pub feasible: bool,
    pub weights: Option<BTreeMap<(usize, usize), T>>,
}

/// Decides whether some nonnegative edge weighting saturates every vertex weight.
pub fn has_fractional_perfect_matching<T: Scalar>(graph: &DominationGraph<T>) -> FractionalMatching<T> {
    let n = graph.agent_weights.len();
    let m = graph.alt_weights.len();
    let total_p = graph.agent_weights.iter().fold(T::zero(), |a, v| a + v);
    let total_q = graph.alt_weights.iter().fold(T::zero(), |a, v| a + v);
    let infeasible = FractionalMatching { feasible: false, weights: None };
    if !total_p.eq_tol(&total_q) {
        return infeasible;
    }
    let (src, sink) = (n + m, n + m + 1);
    let mut net = FlowNetwork::new(n + m + 2);
    for (i, p) in graph.agent_weights.iter().enumerate() {
        net.set_capacity(src, i, Some(p.clone()));
    }
    for (c, q) in graph.alt_weights.iter().enumerate() {
        net.set_capacity(n + c, sink, Some(q.clone()));
    }
    for &(i, c) in &graph.edges {
        net.set_capacity(i, n + c, None);
    }
    let value = net.max_flow(src, sink);
    if !value.eq_tol(&total_p) {
        return infeasible;
    }
    let weights = graph.edges.iter().map(|&(i, c)| ((i, c), net.flow(i, n + c).clone())).collect();
    FractionalMatching { feasible: true, weights: Some(weights) }
}

fn uniform<T: Scalar>(n: usize) -> Vec<T> {
    vec![T::one() / T::from_i64(n as i64); n]
}

/// Lowest-indexed alternative whose graph with uniform agent weights and
/// alternative weights `q` admits a fractional perfect matching.
pub fn matching_winner<T: Scalar>(profile: &Profile<T>, q: &[T]) -> Result<usize> {
    let p = uniform::<T>(profile.num_agents());
    (0..profile.num_alternatives())
        .into_par_iter()
        .find_first(|&a| {
            has_fractional_perfect_matching(&DominationGraph::build(profile, a, p.clone(), q.to_vec())).feasible
        })
        .ok_or(Error::NoFeasibleAlternative)
}

/// `q(a) = sum_i s[rank_i(a)] / n`.
pub fn positional_weights<T: Scalar>(profile: &Profile<T>, s: &ScoringVector<T>) -> Result<Vec<T>> {
    let m = profile.num_alternatives();
    if s.scores().len() != m {
        return Err(Error::InvalidScoringVector(format!("{} scores for {m} alternatives", s.scores().len())));
    }
    let n = T::from_i64(profile.num_agents() as i64);
    Ok((0..m)
        .map(|a| profile.preferences().iter().fold(T::zero(), |acc, p| acc + &s.scores()[p.position(a)]) / &n)
        .collect())
}

/// Positional Scoring Matching with scores `s`.
pub fn psm_winner<T: Scalar>(profile: &Profile<T>, s: &ScoringVector<T>) -> Result<usize> {
    matching_winner(profile, &positional_weights(profile, s)?)
}

/// Largest intensity rank in the profile; `0` with a single alternative.
pub fn max_intensity_rank<T: Scalar>(profile: &Profile<T>) -> Result<usize> {
    if profile.num_alternatives() == 1 {
        return Ok(0);
    }
    profile.preferences().iter().map(intensity_rank).try_fold(0, |acc, k| Ok(acc.max(k?)))
}

/// Alternative weights from each agent's own optimal vector `r^{l_i}`.
pub fn general_weights<T: Scalar>(profile: &Profile<T>) -> Result<Vec<T>> {
    let m = profile.num_alternatives();
    let n = T::from_i64(profile.num_agents() as i64);
    let mut q = vec![T::zero(); m];
    for pref in profile.preferences() {
        let r = rank_vector(intensity_rank(pref)?, profile.alpha())?;
        for (pos, score) in r.iter().enumerate() {
            q[pref.at(pos)] += score;
        }
    }
    Ok(q.into_iter().map(|v| v / &n).collect())
}

/// The rule whose distortion is at most `2 + max(alpha, t_lmax)`.
pub fn general_winner<T: Scalar>(profile: &Profile<T>) -> Result<usize> {
    if profile.mode() != ElicitationMode::Mandatory {
        return Err(Error::WrongMode("mandatory"));
    }
    if !profile.alpha().is_positive() {
        return Err(Error::AlphaOutOfDomain { alpha: profile.alpha().to_string(), domain: "(0, 1]" });
    }
    if profile.num_alternatives() == 1 {
        return Ok(0);
    }
    matching_winner(profile, &general_weights(profile)?)
}

/// Guarantee of [`general_winner`]: `2 + max(alpha, t_lmax)`.
pub fn general_guarantee<T: Scalar>(profile: &Profile<T>) -> Result<T> {
    distortion_bound(max_intensity_rank(profile)?, profile.alpha())
}

/// Agents whose intensity rank is at most `ell`.
pub fn core_agents<T: Scalar>(profile: &Profile<T>, ell: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, p) in profile.preferences().iter().enumerate() {
        if profile.num_alternatives() == 1 || intensity_rank(p)? <= ell {
            out.push(i);
        }
    }
    Ok(out)
}

/// [`general_winner`] run on the agents with intensity rank at most `ell`.
pub fn robust_winner<T: Scalar>(profile: &Profile<T>, ell: usize) -> Result<usize> {
    let core = core_agents(profile, ell)?;
    if core.is_empty() {
        return Err(Error::EmptyCore(ell));
    }
    general_winner(&profile.restrict_agents(&core)?)
}

/// Guarantee of [`robust_winner`]: `D + beta/(1-beta)(1+D)` with `D = 2 + max(alpha, t_ell)`.
pub fn robust_guarantee<T: Scalar>(profile: &Profile<T>, ell: usize) -> Result<T> {
    let core = core_agents(profile, ell)?;
    if core.is_empty() {
        return Err(Error::EmptyCore(ell));
    }
    let n = profile.num_agents();
    let beta = T::from_i64((n - core.len()) as i64) / T::from_i64(n as i64);
    Ok(robust_bound(&distortion_bound(ell, profile.alpha())?, &beta))
}
