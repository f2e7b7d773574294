//! Linear programs over any [`Scalar`](crate::Scalar), solved by a two-phase
//! tableau simplex with Bland's rule, plus zero-sum matrix games.

mod game;
mod simplex;

pub use game::{solve_zero_sum, GameValue};
pub use simplex::{solve, solve_many};

/// Objective direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

/// Constraint relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coefficients: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T> Constraint<T> {
    pub fn new(coefficients: Vec<T>, relation: Relation, rhs: T) -> Self {
        Self { coefficients, relation, rhs }
    }
}

/// `optimize objective . x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    pub sense: Sense,
    pub constraints: Vec<Constraint<T>>,
}

impl<T> LpProblem<T> {
    pub fn new(num_vars: usize, objective: Vec<T>, sense: Sense) -> Self {
        Self { num_vars, objective, sense, constraints: Vec::new() }
    }

    pub fn add(&mut self, coefficients: Vec<T>, relation: Relation, rhs: T) {
        self.constraints.push(Constraint::new(coefficients, relation, rhs));
    }

    /// Panics unless every vector has `num_vars` entries.
    pub fn assert_well_formed(&self) {
        assert_eq!(self.objective.len(), self.num_vars, "objective length");
        for (r, c) in self.constraints.iter().enumerate() {
            assert_eq!(c.coefficients.len(), self.num_vars, "constraint {r} length");
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { value: T, assignment: Vec<T> },
    Infeasible,
    Unbounded,
}

impl<T> LpOutcome<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}
