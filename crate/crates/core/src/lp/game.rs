use super::{solve, LpOutcome, LpProblem, Relation, Sense};
use crate::scalar::Scalar;

/// Minimax solution of a square zero-sum game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameValue<T> {
    /// `min_r max_j (r^T M)_j`.
    pub value: T,
    pub row_strategy: Vec<T>,
    pub col_strategy: Vec<T>,
}

/// Solves the game where the row player picks `r` to minimise `r^T M c`.
///
/// Panics if `payoff` is not square or is empty.
pub fn solve_zero_sum<T: Scalar>(payoff: &[Vec<T>]) -> GameValue<T> {
    let k = payoff.len();
    assert!(k > 0 && payoff.iter().all(|r| r.len() == k), "payoff must be square");

    // Row player: min v s.t. r^T M <= v, sum r = 1; v = v+ - v-.
    let mut obj = vec![T::zero(); k + 2];
    obj[k] = T::one();
    obj[k + 1] = -T::one();
    let mut row_lp = LpProblem::new(k + 2, obj, Sense::Minimize);
    for j in 0..k {
        let mut c: Vec<T> = (0..k).map(|i| payoff[i][j].clone()).collect();
        c.push(-T::one());
        c.push(T::one());
        row_lp.add(c, Relation::Le, T::zero());
    }
    row_lp.add(simplex_row(k), Relation::Eq, T::one());

    // Column player: max u s.t. M c >= u, sum c = 1.
    let mut obj = vec![T::zero(); k + 2];
    obj[k] = T::one();
    obj[k + 1] = -T::one();
    let mut col_lp = LpProblem::new(k + 2, obj, Sense::Maximize);
    for row in payoff {
        let mut c = row.clone();
        c.push(-T::one());
        c.push(T::one());
        col_lp.add(c, Relation::Ge, T::zero());
    }
    col_lp.add(simplex_row(k), Relation::Eq, T::one());

    let (value, mut r) = optimal(solve(&row_lp));
    let (_, mut c) = optimal(solve(&col_lp));
    r.truncate(k);
    c.truncate(k);
    GameValue { value, row_strategy: r, col_strategy: c }
}

fn simplex_row<T: Scalar>(k: usize) -> Vec<T> {
    let mut c = vec![T::one(); k];
    c.push(T::zero());
    c.push(T::zero());
    c
}

fn optimal<T>(o: LpOutcome<T>) -> (T, Vec<T>) {
    match o {
        LpOutcome::Optimal { value, assignment } => (value, assignment),
        _ => unreachable!("a finite game always has a value"),
    }
}
