//! Dense two-phase simplex over exact rationals with Bland's rule.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{dot, RatioParts, Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn flipped(self) -> Sense {
        match self {
            Sense::Le => Sense::Ge,
            Sense::Ge => Sense::Le,
            Sense::Eq => Sense::Eq,
        }
    }
}

/// Optimal basic solution of `max c·x` s.t. `A x (senses) b`, `x >= 0`,
/// with the matching dual.
///
/// Dual signs follow the maximization convention: `π_i >= 0` on `<=` rows,
/// `π_i <= 0` on `>=` rows, free on equalities, and `Aᵀπ >= c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub primal: RationalVector,
    pub dual: RationalVector,
    pub value: Rational,
    /// Basic columns of the standard-form tableau: structural variables
    /// first, then one slack/surplus per inequality row, then artificials.
    pub optimal_basis: Vec<usize>,
}

#[derive(Serialize)]
pub struct LpSolutionJson {
    pub primal: Vec<RatioParts>,
    pub dual: Vec<RatioParts>,
    pub value: RatioParts,
    pub optimal_basis: Vec<usize>,
}

impl LpSolution {
    pub fn to_json(&self) -> LpSolutionJson {
        LpSolutionJson {
            primal: self.primal.iter().map(RatioParts::from).collect(),
            dual: self.dual.iter().map(RatioParts::from).collect(),
            value: RatioParts::from(&self.value),
            optimal_basis: self.optimal_basis.clone(),
        }
    }

    /// Primal feasibility, dual feasibility and equal objective values.
    pub fn certifies(&self, a: &[RationalVector], b: &[Rational], c: &[Rational], senses: &[Sense]) -> bool {
        let n = c.len();
        if self.primal.len() != n || self.dual.len() != a.len() {
            return false;
        }
        let primal_ok = self.primal.iter().all(|x| !x.is_negative())
            && a.iter().zip(b).zip(senses).all(|((row, rhs), s)| {
                let lhs = dot(row, &self.primal);
                match s {
                    Sense::Le => lhs <= *rhs,
                    Sense::Ge => lhs >= *rhs,
                    Sense::Eq => lhs == *rhs,
                }
            });
        let signs_ok = self.dual.iter().zip(senses).all(|(p, s)| match s {
            Sense::Le => !p.is_negative(),
            Sense::Ge => !p.is_positive(),
            Sense::Eq => true,
        });
        let reduced_ok = (0..n).all(|j| {
            let col: Rational = a.iter().zip(&self.dual).map(|(row, p)| &row[j] * p).sum();
            col >= c[j]
        });
        primal_ok && signs_ok && reduced_ok && dot(&self.dual, b) == self.value && dot(c, &self.primal) == self.value
    }
}

struct Tableau {
    rows: Vec<RationalVector>,
    rhs: RationalVector,
    basis: Vec<usize>,
    artificial_from: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let z: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .filter(|(b, _)| !cost[**b].is_zero())
            .map(|(b, row)| &cost[*b] * &row[j])
            .sum();
        &cost[j] - z
    }

    /// Maximize `cost` from the current feasible basis; columns at or past
    /// `enter_limit` never enter.
    fn optimize(&mut self, cost: &[Rational], enter_limit: usize) -> Result<()> {
        loop {
            let Some(c) =
                (0..enter_limit).find(|&j| !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive())
            else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.ok_or(Error::Unbounded)?;
            self.pivot(r, c);
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().zip(&self.rhs).map(|(b, v)| &cost[*b] * v).sum()
    }
}

/// Solve `max objective·x` subject to `constraint_matrix · x (senses) rhs`
/// and `x >= 0`.
pub fn solve_lp(
    constraint_matrix: &[RationalVector],
    rhs: &[Rational],
    objective: &[Rational],
    senses: &[Sense],
) -> Result<LpSolution> {
    let m = constraint_matrix.len();
    let n = objective.len();
    assert_eq!(rhs.len(), m);
    assert_eq!(senses.len(), m);
    assert!(constraint_matrix.iter().all(|r| r.len() == n));

    // Nonnegative right-hand sides.
    let mut flipped = vec![false; m];
    let mut rows: Vec<RationalVector> = Vec::with_capacity(m);
    let mut b: RationalVector = Vec::with_capacity(m);
    let mut s: Vec<Sense> = Vec::with_capacity(m);
    for i in 0..m {
        if rhs[i].is_negative() {
            flipped[i] = true;
            rows.push(constraint_matrix[i].iter().map(|x| -x).collect());
            b.push(-rhs[i].clone());
            s.push(senses[i].flipped());
        } else {
            rows.push(constraint_matrix[i].clone());
            b.push(rhs[i].clone());
            s.push(senses[i]);
        }
    }

    let n_slack = s.iter().filter(|x| **x != Sense::Eq).count();
    let n_art = s.iter().filter(|x| **x != Sense::Le).count();
    let artificial_from = n + n_slack;
    let ncols = artificial_from + n_art;
    let mut identity_col = vec![0; m];
    let mut basis = vec![0; m];
    let (mut next_slack, mut next_art) = (n, artificial_from);
    for i in 0..m {
        rows[i].resize(ncols, Rational::zero());
        match s[i] {
            Sense::Le => {
                rows[i][next_slack] = Rational::from_integer(1.into());
                identity_col[i] = next_slack;
                next_slack += 1;
            }
            Sense::Ge => {
                rows[i][next_slack] = Rational::from_integer((-1).into());
                next_slack += 1;
                rows[i][next_art] = Rational::from_integer(1.into());
                identity_col[i] = next_art;
                next_art += 1;
            }
            Sense::Eq => {
                rows[i][next_art] = Rational::from_integer(1.into());
                identity_col[i] = next_art;
                next_art += 1;
            }
        }
        basis[i] = identity_col[i];
    }
    let mut t = Tableau {
        rows,
        rhs: b,
        basis,
        artificial_from,
    };

    if n_art > 0 {
        let mut phase1 = vec![Rational::zero(); ncols];
        for c in phase1.iter_mut().skip(artificial_from) {
            *c = Rational::from_integer((-1).into());
        }
        t.optimize(&phase1, ncols)?;
        if t.objective(&phase1).is_negative() {
            return Err(Error::Infeasible);
        }
        // Drive zero-level artificials out where possible; rows where that
        // fails are redundant and keep their artificial at zero.
        for r in 0..m {
            if t.basis[r] >= t.artificial_from {
                if let Some(c) = (0..t.artificial_from).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, c);
                }
            }
        }
    }

    let mut cost = vec![Rational::zero(); ncols];
    cost[..n].clone_from_slice(objective);
    t.optimize(&cost, t.artificial_from)?;

    let mut primal = vec![Rational::zero(); n];
    for (bcol, v) in t.basis.iter().zip(&t.rhs) {
        if *bcol < n {
            primal[*bcol] = v.clone();
        }
    }
    let dual: RationalVector = (0..m)
        .map(|i| {
            let p: Rational = t
                .basis
                .iter()
                .zip(&t.rows)
                .map(|(bcol, row)| &cost[*bcol] * &row[identity_col[i]])
                .sum();
            if flipped[i] {
                -p
            } else {
                p
            }
        })
        .collect();
    let value = t.objective(&cost);
    let mut optimal_basis = t.basis.clone();
    optimal_basis.sort_unstable();
    let sol = LpSolution {
        primal,
        dual,
        value,
        optimal_basis,
    };
    debug_assert!(sol.certifies(constraint_matrix, rhs, objective, senses));
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> RationalVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn box_lp() {
        let a = vec![v(&[1, 0]), v(&[0, 1])];
        let sol = solve_lp(&a, &v(&[1, 1]), &v(&[1, 1]), &[Sense::Le, Sense::Le]).unwrap();
        assert_eq!(sol.value, int(2));
        assert_eq!(sol.dual, v(&[1, 1]));
    }

    #[test]
    fn degenerate_zero_objective() {
        let sol = solve_lp(&[], &[], &v(&[0, 0]), &[]).unwrap();
        assert_eq!(sol.value, int(0));
        let sol = solve_lp(&[v(&[1, 1])], &v(&[0]), &v(&[0, 0]), &[Sense::Le]).unwrap();
        assert_eq!(sol.value, int(0));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![v(&[1]), v(&[1])];
        assert_eq!(
            solve_lp(&a, &v(&[1, 2]), &v(&[1]), &[Sense::Le, Sense::Ge]),
            Err(Error::Infeasible)
        );
        assert_eq!(
            solve_lp(&[v(&[1, -1])], &v(&[1]), &v(&[0, 1]), &[Sense::Le]),
            Err(Error::Unbounded)
        );
        assert_eq!(solve_lp(&[], &[], &v(&[1]), &[]), Err(Error::Unbounded));
    }

    #[test]
    fn mixed_senses_and_negative_rhs() {
        // max x + 2y  s.t. x + y = 3, x - y >= -1, x <= 5, y <= 10
        let a = vec![v(&[1, 1]), v(&[1, -1]), v(&[1, 0]), v(&[0, 1])];
        let b = v(&[3, -1, 5, 10]);
        let senses = [Sense::Eq, Sense::Ge, Sense::Le, Sense::Le];
        let c = v(&[1, 2]);
        let sol = solve_lp(&a, &b, &c, &senses).unwrap();
        assert_eq!(sol.primal, v(&[1, 2]));
        assert_eq!(sol.value, int(5));
        assert!(sol.certifies(&a, &b, &c, &senses));
    }

    #[test]
    fn redundant_equalities() {
        let a = vec![v(&[1, 1]), v(&[2, 2]), v(&[1, 0])];
        let b = v(&[1, 2, 1]);
        let senses = [Sense::Eq, Sense::Eq, Sense::Le];
        let c = vec![ratio(1, 2), int(1)];
        let sol = solve_lp(&a, &b, &c, &senses).unwrap();
        assert_eq!(sol.value, int(1));
        assert!(sol.certifies(&a, &b, &c, &senses));
    }
}
