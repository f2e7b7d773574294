use super::{LpOutcome, LpProblem, Relation, Sense};
use crate::scalar::Scalar;

/// Consecutive degenerate pivots before entering columns are chosen by index.
const BLAND_AFTER: usize = 8;

/// Dense tableau in canonical form: `rows[r]` expresses basic variable
/// `basis[r]`, and each objective row holds reduced costs `c_j - z_j` with the
/// current objective value in `values`.
#[derive(Clone)]
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    costs: Vec<Vec<T>>,
    values: Vec<T>,
    /// Columns allowed to enter the basis.
    enterable: Vec<bool>,
}

impl<T: Scalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut().filter(|v| !v.is_zero()) {
                *v /= &p;
            }
            self.rhs[r] /= &p;
        }
        let support: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for &j in &support {
                row[j].sub_mul_assign(&f, &prow[j]);
                if !T::EXACT && row[j].is_negligible() {
                    row[j] = T::zero();
                }
            }
            row[c] = T::zero();
            self.rhs[i].sub_mul_assign(&f, &prhs);
        }
        for (cost, value) in self.costs.iter_mut().zip(self.values.iter_mut()) {
            if cost[c].is_zero() {
                continue;
            }
            let f = cost[c].clone();
            for &j in &support {
                cost[j].sub_mul_assign(&f, &prow[j]);
                if !T::EXACT && cost[j].is_negligible() {
                    cost[j] = T::zero();
                }
            }
            cost[c] = T::zero();
            *value += f * &prhs;
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Maximizes objective row `k`. Returns `false` if unbounded.
    ///
    /// Enters the column with the largest reduced cost, switching to Bland's
    /// rule while pivots stay degenerate.
    fn optimize(&mut self, k: usize) -> bool {
        let tol = T::tolerance();
        let mut stalled = 0usize;
        loop {
            let candidates = (0..self.enterable.len()).filter(|&j| self.enterable[j] && self.costs[k][j] > tol);
            let entering = if stalled < BLAND_AFTER {
                candidates.fold(None, |best: Option<usize>, j| match best {
                    Some(b) if self.costs[k][b] >= self.costs[k][j] => Some(b),
                    _ => Some(j),
                })
            } else {
                candidates.min()
            };
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if *a <= tol {
                    continue;
                }
                let ratio = self.rhs[r].clone() / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio.lt_tol(bv) || (ratio.eq_tol(bv) && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, ratio)) => {
                    stalled = if ratio.is_negligible() { stalled + 1 } else { 0 };
                    self.pivot(r, c);
                }
            }
        }
    }

    fn load_objective(&mut self, k: usize, objective: &[T]) {
        let ncols = self.enterable.len();
        let mut cost = vec![T::zero(); ncols];
        cost[..objective.len()].clone_from_slice(objective);
        let mut value = T::zero();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = if b < objective.len() { objective[b].clone() } else { T::zero() };
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[r].iter().enumerate() {
                if !a.is_zero() {
                    cost[j].sub_mul_assign(&cb, a);
                }
            }
            value += cb * &self.rhs[r];
        }
        self.costs[k] = cost;
        self.values[k] = value;
    }

    fn assignment(&self, num_vars: usize) -> Vec<T> {
        let mut x = vec![T::zero(); num_vars];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < num_vars {
                x[b] = self.rhs[r].clone();
            }
        }
        x
    }
}

/// Runs phase one. Returns `None` when the problem is infeasible.
fn phase_one<T: Scalar>(problem: &LpProblem<T>) -> Option<Tableau<T>> {
    problem.assert_well_formed();
    let n = problem.num_vars;
    let m = problem.constraints.len();
    let mut norm = Vec::with_capacity(m);
    for c in &problem.constraints {
        let flip = c.rhs.is_negative();
        let rel = match (c.relation, flip) {
            (Relation::Le, true) => Relation::Ge,
            (Relation::Ge, true) => Relation::Le,
            (r, _) => r,
        };
        let coeffs: Vec<T> = if flip {
            c.coefficients.iter().map(|v| -v.clone()).collect()
        } else {
            c.coefficients.clone()
        };
        let rhs = if flip { -c.rhs.clone() } else { c.rhs.clone() };
        norm.push((coeffs, rel, rhs));
    }
    let slacks = norm.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
    let artificials = norm.iter().filter(|(_, r, _)| *r != Relation::Le).count();
    let ncols = n + slacks + artificials;
    let first_art = n + slacks;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut s, mut a) = (n, first_art);
    for (coeffs, rel, b) in norm {
        let mut row = coeffs;
        row.resize(ncols, T::zero());
        match rel {
            Relation::Le => {
                row[s] = T::one();
                basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -T::one();
                row[a] = T::one();
                basis.push(a);
                s += 1;
                a += 1;
            }
            Relation::Eq => {
                row[a] = T::one();
                basis.push(a);
                a += 1;
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis,
        costs: vec![Vec::new()],
        values: vec![T::zero()],
        enterable: vec![true; ncols],
    };
    if artificials == 0 {
        t.costs[0] = vec![T::zero(); ncols];
        return Some(t);
    }
    let mut art_cost = vec![T::zero(); ncols];
    for c in art_cost.iter_mut().skip(first_art) {
        *c = -T::one();
    }
    t.load_objective(0, &art_cost);
    t.optimize(0);
    if t.values[0].lt_tol(&T::zero()) {
        return None;
    }
    for v in t.enterable.iter_mut().skip(first_art) {
        *v = false;
    }
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= first_art {
            match (0..first_art).find(|&j| !t.rows[r][j].is_negligible()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.rhs.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in &mut t.rows {
        row.truncate(first_art);
    }
    t.enterable.truncate(first_art);
    t.costs[0] = vec![T::zero(); first_art];
    t.values[0] = T::zero();
    Some(t)
}

fn finish<T: Scalar>(t: &mut Tableau<T>, problem: &LpProblem<T>, objective: &[T]) -> LpOutcome<T> {
    let oriented: Vec<T> = match problem.sense {
        Sense::Maximize => objective.to_vec(),
        Sense::Minimize => objective.iter().map(|v| -v.clone()).collect(),
    };
    t.load_objective(0, &oriented);
    if !t.optimize(0) {
        return LpOutcome::Unbounded;
    }
    let assignment = t.assignment(problem.num_vars);
    let value = objective.iter().zip(&assignment).fold(T::zero(), |acc, (c, x)| acc + c.clone() * x);
    LpOutcome::Optimal { value, assignment }
}

/// Solves `problem` exactly (for exact scalars).
pub fn solve<T: Scalar>(problem: &LpProblem<T>) -> LpOutcome<T> {
    match phase_one(problem) {
        None => LpOutcome::Infeasible,
        Some(mut t) => finish(&mut t, problem, &problem.objective),
    }
}

/// Solves the feasible region of `problem` once against several objectives.
///
/// `problem.objective` is ignored; results come back in the order of
/// `objectives`. Each solve starts from the basis the previous one ended in.
pub fn solve_many<T: Scalar>(problem: &LpProblem<T>, objectives: &[Vec<T>]) -> Vec<LpOutcome<T>> {
    match phase_one(problem) {
        None => objectives.iter().map(|_| LpOutcome::Infeasible).collect(),
        Some(mut t) => objectives
            .iter()
            .map(|obj| {
                assert_eq!(obj.len(), problem.num_vars, "objective length");
                finish(&mut t, problem, obj)
            })
            .collect(),
    }
}
