use std::collections::VecDeque;

use crate::scalar::Scalar;

/// Dense residual network for Edmonds-Karp. `None` capacity means unbounded.
pub(crate) struct FlowNetwork<T> {
    cap: Vec<Vec<Option<T>>>,
    flow: Vec<Vec<T>>,
}

impl<T: Scalar> FlowNetwork<T> {
    pub(crate) fn new(nodes: usize) -> Self {
        Self { cap: vec![vec![Some(T::zero()); nodes]; nodes], flow: vec![vec![T::zero(); nodes]; nodes] }
    }

    pub(crate) fn set_capacity(&mut self, u: usize, v: usize, c: Option<T>) {
        self.cap[u][v] = c;
    }

    fn has_residual(&self, u: usize, v: usize) -> bool {
        match self.path_capacity(u, v) {
            None => true,
            Some(r) => T::zero().lt_tol(&r),
        }
    }

    /// Maximum flow value from `s` to `t`.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> T {
        let n = self.cap.len();
        let mut total = T::zero();
        loop {
            let mut parent = vec![usize::MAX; n];
            parent[s] = s;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for v in 0..n {
                    if parent[v] == usize::MAX && self.has_residual(u, v) {
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == usize::MAX {
                return total;
            }
            let mut bottleneck: Option<T> = None;
            let mut v = t;
            while v != s {
                let u = parent[v];
                if let Some(r) = self.path_capacity(u, v) {
                    bottleneck = Some(match bottleneck {
                        Some(b) if b <= r => b,
                        _ => r,
                    });
                }
                v = u;
            }
            let b = bottleneck.expect("every augmenting path has a finite edge");
            let mut v = t;
            while v != s {
                let u = parent[v];
                self.push(u, v, &b);
                v = u;
            }
            total += b;
        }
    }

    /// Augmentable amount along `u -> v`: cancelled reverse flow plus forward slack.
    fn path_capacity(&self, u: usize, v: usize) -> Option<T> {
        self.cap[u][v].as_ref().map(|c| self.flow[v][u].clone() + c - &self.flow[u][v])
    }

    fn push(&mut self, u: usize, v: usize, amount: &T) {
        let back = self.flow[v][u].clone();
        if back >= *amount {
            self.flow[v][u] -= amount;
        } else {
            self.flow[v][u] = T::zero();
            self.flow[u][v] += amount.clone() - back;
        }
    }

    pub(crate) fn flow(&self, u: usize, v: usize) -> &T {
        &self.flow[u][v]
    }
}
