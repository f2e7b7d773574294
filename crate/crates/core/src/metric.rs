//! Agent-to-alternative distance tables and the checks run against them.

use crate::error::{Error, Result};
use crate::profile::{Intensity, Profile};
use crate::scalar::Scalar;
use crate::Rational;

/// Distances `d(i, a_j)` for every agent `i` and alternative `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMatrix<T = Rational> {
    rows: Vec<Vec<T>>,
    m: usize,
}

impl<T: Scalar> MetricMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::DimensionMismatch("rows of different lengths".into()));
        }
        if rows.iter().flatten().any(|d| d.is_negative()) {
            return Err(Error::ParameterOutOfRange("negative distance".into()));
        }
        Ok(Self { rows, m })
    }

    pub fn num_agents(&self) -> usize {
        self.rows.len()
    }

    pub fn num_alternatives(&self) -> usize {
        self.m
    }

    pub fn get(&self, agent: usize, alt: usize) -> &T {
        &self.rows[agent][alt]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn column(&self, alt: usize) -> impl Iterator<Item = &T> {
        self.rows.iter().map(move |r| &r[alt])
    }
}

/// Sum of all agents' distances to `alt`.
pub fn social_cost<T: Scalar>(metric: &MetricMatrix<T>, alt: usize) -> T {
    metric.column(alt).fold(T::zero(), |acc, d| acc + d)
}

/// `sc(a) / sc(b)`; `None` when `sc(b) = 0`.
pub fn cost_ratio<T: Scalar>(metric: &MetricMatrix<T>, a: usize, b: usize) -> Option<T> {
    let den = social_cost(metric, b);
    if den.is_zero() {
        None
    } else {
        Some(social_cost(metric, a) / den)
    }
}

/// A failed instance of `d(i,a) <= d(i,b) + d(i',b) + d(i',a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleViolation<T> {
    pub agent: usize,
    pub other: usize,
    pub alt: usize,
    pub via: usize,
    /// Left side minus right side; positive.
    pub slack: T,
}

/// All violated four-point inequalities.
pub fn check_triangle<T: Scalar>(metric: &MetricMatrix<T>) -> Vec<TriangleViolation<T>> {
    let (n, m) = (metric.num_agents(), metric.num_alternatives());
    let mut out = Vec::new();
    for i in 0..n {
        for i2 in (0..n).filter(|&x| x != i) {
            for a in 0..m {
                for b in (0..m).filter(|&x| x != a) {
                    let rhs = metric.get(i, b).clone() + metric.get(i2, b) + metric.get(i2, a);
                    let lhs = metric.get(i, a);
                    if !lhs.le_tol(&rhs) {
                        out.push(TriangleViolation {
                            agent: i,
                            other: i2,
                            alt: a,
                            via: b,
                            slack: lhs.clone() - rhs,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Which reading of the ballots a metric is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsistencyMode {
    /// Mandatory elicitation with the strict gap on mild pairs.
    MandatoryStrict,
    /// Mandatory elicitation with `>=` on mild pairs.
    MandatoryClosed,
    /// Order plus the gap on intense pairs.
    Voluntary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `d(i, pi(j)) > d(i, pi(j+1))`.
    Order,
    /// A mild pair where the gap condition holds.
    MildGap,
    /// An intense pair where the gap condition fails.
    IntenseGap,
}

/// A ballot pair the metric contradicts. `position` is the zero-based index of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub agent: usize,
    pub position: usize,
    pub kind: ViolationKind,
}

/// All ballot pairs the metric contradicts under `mode`.
pub fn check_consistency<T: Scalar>(
    profile: &Profile<T>,
    metric: &MetricMatrix<T>,
    mode: ConsistencyMode,
) -> Result<Vec<ConsistencyViolation>> {
    if metric.num_agents() != profile.num_agents()
        || metric.num_alternatives() != profile.num_alternatives()
    {
        return Err(Error::DimensionMismatch(format!(
            "metric is {}x{}, profile is {}x{}",
            metric.num_agents(),
            metric.num_alternatives(),
            profile.num_agents(),
            profile.num_alternatives()
        )));
    }
    let alpha = profile.alpha();
    let mut out = Vec::new();
    for (i, pref) in profile.preferences().iter().enumerate() {
        for (j, &flag) in pref.intensities().iter().enumerate() {
            let hi = metric.get(i, pref.at(j));
            let lo = metric.get(i, pref.at(j + 1));
            let gap = alpha.clone() * lo;
            let mut push = |kind| out.push(ConsistencyViolation { agent: i, position: j, kind });
            if !hi.le_tol(lo) {
                push(ViolationKind::Order);
            }
            match (flag, mode) {
                (Intensity::Intense, _) => {
                    if !hi.le_tol(&gap) {
                        push(ViolationKind::IntenseGap);
                    }
                }
                (Intensity::Mild, ConsistencyMode::MandatoryStrict) => {
                    if !gap.lt_tol(hi) {
                        push(ViolationKind::MildGap);
                    }
                }
                (Intensity::Mild, ConsistencyMode::MandatoryClosed) => {
                    if !gap.le_tol(hi) {
                        push(ViolationKind::MildGap);
                    }
                }
                (Intensity::Mild, ConsistencyMode::Voluntary) => {}
            }
        }
    }
    Ok(out)
}
