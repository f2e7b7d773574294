//! Ballots, elections and the scores that only depend on rankings.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Strength of one adjacent comparison in a ballot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Intensity {
    /// `a > b`
    Mild,
    /// `a >> b`
    Intense,
}

impl Intensity {
    pub fn separator(self) -> &'static str {
        match self {
            Intensity::Mild => ">",
            Intensity::Intense => ">>",
        }
    }
}

/// How intensity flags were collected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElicitationMode {
    /// Every gap of factor alpha must be flagged, and only those.
    Mandatory,
    /// A flag implies the gap; no flag implies nothing beyond order.
    Voluntary,
}

impl fmt::Display for ElicitationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElicitationMode::Mandatory => "mandatory",
            ElicitationMode::Voluntary => "voluntary",
        })
    }
}

impl std::str::FromStr for ElicitationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "mandatory" => Ok(ElicitationMode::Mandatory),
            "voluntary" => Ok(ElicitationMode::Voluntary),
            other => Err(Error::InvalidPreference(format!("unknown mode `{other}`"))),
        }
    }
}

/// One agent's strict ranking with a flag on each adjacent pair.
///
/// Positions are zero-based: `ranking[0]` is the favourite and
/// `intensities[j]` describes the pair `(ranking[j], ranking[j + 1])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntensivePreference {
    ranking: Vec<usize>,
    intensities: Vec<Intensity>,
    positions: Vec<usize>,
}

impl IntensivePreference {
    pub fn new(ranking: Vec<usize>, intensities: Vec<Intensity>) -> Result<Self> {
        let m = ranking.len();
        if m == 0 {
            return Err(Error::InvalidPreference("empty ranking".into()));
        }
        if intensities.len() != m - 1 {
            return Err(Error::InvalidPreference(format!(
                "{} flags for {} alternatives",
                intensities.len(),
                m
            )));
        }
        let mut positions = vec![usize::MAX; m];
        for (pos, &alt) in ranking.iter().enumerate() {
            if alt >= m {
                return Err(Error::InvalidPreference(format!("alternative index {alt} out of range")));
            }
            if positions[alt] != usize::MAX {
                return Err(Error::DuplicateAlternative(format!("#{alt}")));
            }
            positions[alt] = pos;
        }
        Ok(Self { ranking, intensities, positions })
    }

    /// A ranking with every flag mild.
    pub fn mild(ranking: Vec<usize>) -> Result<Self> {
        let flags = vec![Intensity::Mild; ranking.len().saturating_sub(1)];
        Self::new(ranking, flags)
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn intensities(&self) -> &[Intensity] {
        &self.intensities
    }

    pub fn num_alternatives(&self) -> usize {
        self.ranking.len()
    }

    /// Zero-based position of `alt` in the ranking.
    pub fn position(&self, alt: usize) -> usize {
        self.positions[alt]
    }

    /// Alternative at zero-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.ranking[pos]
    }

    pub fn top(&self) -> usize {
        self.ranking[0]
    }

    /// Same ranking with different flags.
    pub fn with_intensities(&self, intensities: Vec<Intensity>) -> Result<Self> {
        Self::new(self.ranking.clone(), intensities)
    }

    /// Whether the agent ranks `a` weakly above `c`.
    pub fn weakly_prefers(&self, a: usize, c: usize) -> bool {
        self.positions[a] <= self.positions[c]
    }
}

/// Number of leading mild flags: the `k` for which the ballot is moderate up to `k`.
///
/// A ballot without intense flags yields `m - 1`; one starting with an intense
/// flag yields `0`.
pub fn intensity_rank(pref: &IntensivePreference) -> Result<usize> {
    if pref.num_alternatives() < 2 {
        return Err(Error::NoAdjacentPairs);
    }
    Ok(pref
        .intensities
        .iter()
        .position(|&f| f == Intensity::Intense)
        .unwrap_or(pref.intensities.len()))
}

/// An election: shared alternatives, one ballot per agent, the gap factor and the mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile<T = Rational> {
    names: Vec<String>,
    preferences: Vec<IntensivePreference>,
    alpha: T,
    mode: ElicitationMode,
}

impl<T: Scalar> Profile<T> {
    pub fn new(
        names: Vec<String>,
        preferences: Vec<IntensivePreference>,
        alpha: T,
        mode: ElicitationMode,
    ) -> Result<Self> {
        let m = names.len();
        if m == 0 {
            return Err(Error::InvalidPreference("no alternatives".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateAlternative(a.clone()));
            }
        }
        if preferences.is_empty() {
            return Err(Error::InvalidPreference("no agents".into()));
        }
        if let Some(p) = preferences.iter().find(|p| p.num_alternatives() != m) {
            return Err(Error::InvalidPreference(format!(
                "ballot ranks {} of {} alternatives",
                p.num_alternatives(),
                m
            )));
        }
        if alpha < T::zero() || alpha > T::one() {
            return Err(Error::AlphaOutOfRange(alpha.to_string()));
        }
        Ok(Self { names, preferences, alpha, mode })
    }

    /// Profile with alternatives named `a1..am`.
    pub fn with_default_names(
        preferences: Vec<IntensivePreference>,
        alpha: T,
        mode: ElicitationMode,
    ) -> Result<Self> {
        let m = preferences.first().map_or(0, |p| p.num_alternatives());
        Self::new(default_names(m), preferences, alpha, mode)
    }

    pub fn num_alternatives(&self) -> usize {
        self.names.len()
    }

    pub fn num_agents(&self) -> usize {
        self.preferences.len()
    }

    pub fn alternative_names(&self) -> &[String] {
        &self.names
    }

    pub fn preferences(&self) -> &[IntensivePreference] {
        &self.preferences
    }

    pub fn alpha(&self) -> &T {
        &self.alpha
    }

    pub fn mode(&self) -> ElicitationMode {
        self.mode
    }

    /// Index of the alternative called `name`.
    pub fn alternative(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownAlternative(name.to_string()))
    }

    pub fn with_mode(&self, mode: ElicitationMode) -> Self {
        Self { mode, ..self.clone() }
    }

    pub fn with_alpha(&self, alpha: T) -> Result<Self> {
        Self::new(self.names.clone(), self.preferences.clone(), alpha, self.mode)
    }

    pub fn with_preferences(&self, preferences: Vec<IntensivePreference>) -> Result<Self> {
        Self::new(self.names.clone(), preferences, self.alpha.clone(), self.mode)
    }

    /// Sub-election restricted to the given agents.
    pub fn restrict_agents(&self, agents: &[usize]) -> Result<Self> {
        self.with_preferences(agents.iter().map(|&i| self.preferences[i].clone()).collect())
    }

    /// Converts the gap factor into another scalar type.
    pub fn map_scalar<U: Scalar>(&self, f: impl FnOnce(&T) -> U) -> Profile<U> {
        Profile {
            names: self.names.clone(),
            preferences: self.preferences.clone(),
            alpha: f(&self.alpha),
            mode: self.mode,
        }
    }

    /// Mild-only copy (the intensity-oblivious view).
    pub fn rankings_only(&self) -> Self {
        let prefs = self
            .preferences
            .iter()
            .map(|p| IntensivePreference::mild(p.ranking().to_vec()).expect("valid ranking"))
            .collect();
        Self { preferences: prefs, ..self.clone() }
    }
}

/// Names `a1, a2, ...`.
pub fn default_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("a{i}")).collect()
}

/// Number of agents ranking `alt` first.
pub fn plurality_score<T: Scalar>(profile: &Profile<T>, alt: usize) -> usize {
    profile.preferences().iter().filter(|p| p.top() == alt).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn pref(r: &[usize], f: &[Intensity]) -> IntensivePreference {
        IntensivePreference::new(r.to_vec(), f.to_vec()).unwrap()
    }

    #[test]
    fn intensity_rank_examples() {
        use Intensity::*;
        assert_eq!(intensity_rank(&pref(&[0, 1, 2], &[Mild, Intense])).unwrap(), 1);
        assert_eq!(intensity_rank(&pref(&[0, 1, 2], &[Mild, Mild])).unwrap(), 2);
        assert_eq!(intensity_rank(&pref(&[0, 1], &[Intense])).unwrap(), 0);
        assert_eq!(intensity_rank(&pref(&[0], &[])), Err(Error::NoAdjacentPairs));
    }

    #[test]
    fn preference_validation() {
        assert!(IntensivePreference::new(vec![0, 0], vec![Intensity::Mild]).is_err());
        assert!(IntensivePreference::new(vec![0, 1], vec![]).is_err());
        assert!(IntensivePreference::new(vec![0, 2], vec![Intensity::Mild]).is_err());
        let p = pref(&[2, 0, 1], &[Intensity::Mild, Intensity::Mild]);
        assert_eq!(p.position(2), 0);
        assert_eq!(p.position(1), 2);
        assert!(p.weakly_prefers(0, 0));
        assert!(!p.weakly_prefers(1, 0));
    }

    #[test]
    fn plurality_examples() {
        let unanimous = Profile::with_default_names(
            vec![IntensivePreference::mild(vec![0, 1]).unwrap(); 3],
            ratio(1, 2),
            ElicitationMode::Mandatory,
        )
        .unwrap();
        assert_eq!(plurality_score(&unanimous, 0), 3);
        assert_eq!(plurality_score(&unanimous, 1), 0);
        let opposite = Profile::with_default_names(
            vec![
                IntensivePreference::mild(vec![0, 1]).unwrap(),
                IntensivePreference::mild(vec![1, 0]).unwrap(),
            ],
            ratio(1, 2),
            ElicitationMode::Mandatory,
        )
        .unwrap();
        assert_eq!(plurality_score(&opposite, 0), 1);
    }

    #[test]
    fn alpha_range_enforced() {
        let prefs = vec![IntensivePreference::mild(vec![0, 1]).unwrap()];
        assert!(Profile::with_default_names(prefs.clone(), ratio(3, 2), ElicitationMode::Mandatory).is_err());
        assert!(Profile::with_default_names(prefs, ratio(-1, 2), ElicitationMode::Mandatory).is_err());
    }
}
