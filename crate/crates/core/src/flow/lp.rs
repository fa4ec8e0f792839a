//! Dense two-phase simplex over exact rationals, with Bland's rule.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub(crate) type Q = Ratio<i128>;

/// Minimize `cost . x` subject to `rows . x = rhs`, `x >= 0`.
pub(crate) struct LinearProgram {
    pub rows: Vec<Vec<Q>>,
    pub rhs: Vec<Q>,
    pub cost: Vec<Q>,
}

#[derive(Debug, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { value: Q, x: Vec<Q> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `m` constraint rows followed by the objective row; the last column is the right-hand side.
    t: Vec<Vec<Q>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c];
        for x in self.t[r].iter_mut() {
            *x /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on columns `< allowed`. Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let m = self.basis.len();
        loop {
            let obj = &self.t[m];
            let Some(c) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(Q, usize, usize)> = None;
            for i in 0..m {
                let a = self.t[i][c];
                if a.is_positive() {
                    let ratio = self.t[i][self.cols] / a;
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

pub(crate) fn solve(lp: &LinearProgram) -> LpOutcome {
    let m = lp.rows.len();
    let n = lp.cost.len();
    let cols = n + m;
    let mut t = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = lp.rhs[i].is_negative();
        let mut row = vec![Q::zero(); cols + 1];
        for j in 0..n {
            row[j] = if flip { -lp.rows[i][j] } else { lp.rows[i][j] };
        }
        row[n + i] = Q::one();
        row[cols] = if flip { -lp.rhs[i] } else { lp.rhs[i] };
        t.push(row);
    }
    // phase one objective: sum of artificials, expressed in non-basic columns
    let mut obj = vec![Q::zero(); cols + 1];
    for row in &t {
        for j in 0..n {
            obj[j] -= row[j];
        }
        obj[cols] -= row[cols];
    }
    t.push(obj);
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        cols,
    };
    tab.optimize(n);
    if !tab.t[m][cols].is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < tab.basis.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let m = tab.basis.len();
    // phase two objective row
    let mut obj = vec![Q::zero(); cols + 1];
    obj[..n].copy_from_slice(&lp.cost);
    for r in 0..m {
        let c = lp.cost[tab.basis[r]];
        if c.is_zero() {
            continue;
        }
        for j in 0..=cols {
            obj[j] -= c * tab.t[r][j];
        }
    }
    tab.t[m] = obj;
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for r in 0..m {
        x[tab.basis[r]] = tab.t[r][cols];
    }
    let value = x.iter().zip(&lp.cost).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn small_program() {
        // minimize -x - y  s.t.  x + 2y + s1 = 4,  3x + y + s2 = 6
        let lp = LinearProgram {
            rows: vec![vec![q(1), q(2), q(1), q(0)], vec![q(3), q(1), q(0), q(1)]],
            rhs: vec![q(4), q(6)],
            cost: vec![q(-1), q(-1), q(0), q(0)],
        };
        match solve(&lp) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, Q::new(-14, 5));
                assert_eq!(x[0], Q::new(8, 5));
                assert_eq!(x[1], Q::new(6, 5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram {
            rows: vec![vec![q(1), q(1)]],
            rhs: vec![q(-1)],
            cost: vec![q(0), q(0)],
        };
        assert_eq!(solve(&lp), LpOutcome::Infeasible);
        let lp = LinearProgram {
            rows: vec![vec![q(1), q(-1)]],
            rhs: vec![q(0)],
            cost: vec![q(-1), q(0)],
        };
        assert_eq!(solve(&lp), LpOutcome::Unbounded);
    }
}
