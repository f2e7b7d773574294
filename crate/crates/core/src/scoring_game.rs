//! Optimal positional scores for agents that are moderate up to `k`.
//!
//! The scores are the row strategy of a `(k+1) x (k+1)` zero-sum game whose
//! value `t_k` gives the distortion guarantee `2 + max(alpha, t_k)`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Mixing weights, game values and the optimal scoring vector for one `(k, alpha)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution<T> {
    pub k: usize,
    pub alpha: T,
    /// `w_1..w_k`.
    pub w: Vec<T>,
    /// `t_1..t_k`.
    pub t: Vec<T>,
    /// `r^k` of length `k + 1`; empty until [`optimal_vector`] fills it.
    pub r: Vec<T>,
}

impl<T: Scalar> GameSolution<T> {
    /// `t_k`.
    pub fn value(&self) -> &T {
        self.t.last().expect("k >= 1")
    }
}

fn check_alpha<T: Scalar>(alpha: &T, allow_zero: bool) -> Result<()> {
    let low_ok = if allow_zero { !alpha.is_negative() } else { alpha.is_positive() };
    if low_ok && *alpha <= T::one() {
        Ok(())
    } else {
        Err(Error::AlphaOutOfDomain {
            alpha: alpha.to_string(),
            domain: if allow_zero { "[0, 1]" } else { "(0, 1]" },
        })
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ParameterOutOfRange("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `w_j` and `t_j` for `j = 1..k`.
pub fn recurrences<T: Scalar>(k: usize, alpha: &T) -> Result<GameSolution<T>> {
    check_k(k)?;
    check_alpha(alpha, true)?;
    let one = T::one();
    let two = T::from_i64(2);
    let three = T::from_i64(3);
    let a = alpha.clone();
    let denom = three * &a + &one;
    let mut w = vec![(a.clone() + &one) / &denom];
    let mut t = vec![(one.clone() - &a) / &denom];
    for j in 1..k {
        let (wp, tp) = (&w[j - 1], &t[j - 1]);
        let d = (one.clone() - &a) * tp + two.clone() * wp + two.clone() * &a;
        let wj = one.clone() - two.clone() * &a / d;
        let tj = wj.clone() + (one.clone() - &wj) * tp;
        w.push(wj);
        t.push(tj);
    }
    Ok(GameSolution { k, alpha: alpha.clone(), w, t, r: Vec::new() })
}

/// Recurrences plus `r^k = (w_k, w_{k-1}(1-w_k), ..., prod_j (1-w_j))`.
pub fn optimal_vector<T: Scalar>(k: usize, alpha: &T) -> Result<GameSolution<T>> {
    let mut sol = recurrences(k, alpha)?;
    let mut r = Vec::with_capacity(k + 1);
    let mut tail = T::one();
    for j in (0..k).rev() {
        r.push(sol.w[j].clone() * &tail);
        tail *= T::one() - &sol.w[j];
    }
    r.push(tail);
    sol.r = r;
    Ok(sol)
}

/// `r^k`, with `r^0 = (1)`.
pub fn rank_vector<T: Scalar>(k: usize, alpha: &T) -> Result<Vec<T>> {
    if k == 0 {
        check_alpha(alpha, true)?;
        return Ok(vec![T::one()]);
    }
    Ok(optimal_vector(k, alpha)?.r)
}

/// `t_k`, with `t_0 = -1`, the value of the one-by-one game `[[-1]]`.
pub fn game_value<T: Scalar>(k: usize, alpha: &T) -> Result<T> {
    if k == 0 {
        check_alpha(alpha, true)?;
        return Ok(-T::one());
    }
    Ok(recurrences(k, alpha)?.value().clone())
}

/// `2 + max(alpha, t_k)`.
pub fn distortion_bound<T: Scalar>(k: usize, alpha: &T) -> Result<T> {
    let t = game_value(k, alpha)?;
    let m = if t > *alpha { t } else { alpha.clone() };
    Ok(T::from_i64(2) + m)
}

/// `D + beta/(1-beta) (1 + D)`: the guarantee when a `beta` share of agents
/// is left out of the electorate the rule looks at.
pub fn robust_bound<T: Scalar>(d: &T, beta: &T) -> T {
    d.clone() + beta.clone() / (T::one() - beta) * (T::one() + d)
}

/// The game matrix `M^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix<T> {
    pub entries: Vec<Vec<T>>,
}

impl<T: Scalar> PayoffMatrix<T> {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `M(i,j) = M(k+2-j, k+2-i)` in one-based indices.
    pub fn is_persymmetric(&self) -> bool {
        let s = self.size();
        (0..s).all(|i| (0..s).all(|j| self.entries[i][j] == self.entries[s - 1 - j][s - 1 - i]))
    }
}

/// `M[i][j] = -1` on the diagonal, `1` above it and `(1/alpha)^(i-j)` below it.
pub fn payoff_matrix<T: Scalar>(k: usize, alpha: &T) -> Result<PayoffMatrix<T>> {
    check_alpha(alpha, false)?;
    let inv = T::one() / alpha;
    let s = k + 1;
    let entries = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => -T::one(),
                    std::cmp::Ordering::Less => T::one(),
                    std::cmp::Ordering::Greater => inv.powi((i - j) as i32),
                })
                .collect()
        })
        .collect();
    Ok(PayoffMatrix { entries })
}

/// Checks `r^T M = t_k 1^T` and `M r^R = t_k 1` exactly and returns `t_k`.
pub fn verify_equilibrium<T: Scalar>(k: usize, alpha: &T) -> Result<T> {
    let sol = optimal_vector(k, alpha)?;
    let m = payoff_matrix(k, alpha)?;
    let t = sol.value().clone();
    let s = k + 1;
    for j in 0..s {
        let v = (0..s).fold(T::zero(), |acc, i| acc + sol.r[i].clone() * &m.entries[i][j]);
        if !v.eq_tol(&t) {
            return Err(Error::IdentityViolated(format!("column {} of r^T M is {v}, expected {t}", j + 1)));
        }
    }
    for i in 0..s {
        let v = (0..s).fold(T::zero(), |acc, j| acc + m.entries[i][j].clone() * &sol.r[s - 1 - j]);
        if !v.eq_tol(&t) {
            return Err(Error::IdentityViolated(format!("row {} of M r^R is {v}, expected {t}", i + 1)));
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::solve_zero_sum;
    use crate::rational::{int, ratio};
    use crate::Rational;

    #[test]
    fn recurrence_examples() {
        let s = recurrences(2, &ratio(1, 2)).unwrap();
        assert_eq!(s.w, vec![ratio(3, 5), ratio(13, 23)]);
        assert_eq!(s.t, vec![ratio(1, 5), ratio(15, 23)]);
        let s = recurrences(1, &int(1)).unwrap();
        assert_eq!((s.w[0].clone(), s.t[0].clone()), (ratio(1, 2), int(0)));
        let s = recurrences(1, &ratio(1, 3)).unwrap();
        assert_eq!((s.w[0].clone(), s.t[0].clone()), (ratio(2, 3), ratio(1, 3)));
        assert!(recurrences(0, &ratio(1, 2)).is_err());
        let s = recurrences(3, &int(0)).unwrap();
        assert!(s.w.iter().all(|w| *w == int(1)));
    }

    #[test]
    fn optimal_vector_examples() {
        assert_eq!(optimal_vector(1, &ratio(1, 2)).unwrap().r, vec![ratio(3, 5), ratio(2, 5)]);
        let r = optimal_vector(2, &ratio(1, 2)).unwrap().r;
        assert_eq!(r, vec![ratio(13, 23), ratio(6, 23), ratio(4, 23)]);
        assert_eq!(r.iter().sum::<Rational>(), int(1));
        assert_eq!(rank_vector(0, &ratio(1, 2)).unwrap(), vec![int(1)]);
    }

    #[test]
    fn payoff_examples() {
        let m = payoff_matrix(1, &ratio(1, 2)).unwrap();
        assert_eq!(m.entries, vec![vec![int(-1), int(1)], vec![int(2), int(-1)]]);
        let m = payoff_matrix(2, &ratio(1, 2)).unwrap();
        assert_eq!(
            m.entries,
            vec![vec![int(-1), int(1), int(1)], vec![int(2), int(-1), int(1)], vec![int(4), int(2), int(-1)]]
        );
        assert!(m.is_persymmetric());
        assert_eq!(payoff_matrix(1, &int(1)).unwrap().entries, vec![vec![int(-1), int(1)], vec![int(1), int(-1)]]);
        assert!(payoff_matrix(1, &int(0)).is_err());
    }

    #[test]
    fn equilibrium_examples() {
        assert_eq!(verify_equilibrium(1, &ratio(1, 2)).unwrap(), ratio(1, 5));
        assert_eq!(verify_equilibrium(2, &ratio(1, 2)).unwrap(), ratio(15, 23));
        let a = ratio(3, 4);
        let m = payoff_matrix(5, &a).unwrap();
        assert_eq!(verify_equilibrium(5, &a).unwrap(), solve_zero_sum(&m.entries).value);
    }

    #[test]
    fn bounds() {
        assert_eq!(distortion_bound(1, &ratio(1, 2)).unwrap(), ratio(5, 2));
        assert_eq!(distortion_bound(2, &ratio(1, 2)).unwrap(), ratio(61, 23));
        assert_eq!(distortion_bound(0, &ratio(1, 2)).unwrap(), ratio(5, 2));
        let d = ratio(11, 5);
        assert_eq!(robust_bound(&d, &ratio(1, 4)), d.clone() + ratio(16, 15));
        assert_eq!(robust_bound(&d, &int(0)), d);
    }

    #[test]
    fn float_recurrence() {
        let s = recurrences(2, &0.5f64).unwrap();
        assert!((s.t[1] - 15.0 / 23.0).abs() < 1e-12);
        assert!((verify_equilibrium(6, &0.3f64).unwrap() - recurrences(6, &0.3).unwrap().t[5]).abs() < 1e-9);
    }
}
