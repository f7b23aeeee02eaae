//! Exact two-phase simplex over rationals with Bland's anti-cycling rule.
//!
//! Problems are stated over free variables: maximize `c·x` subject to `a·x <= b` rows
//! and `e·x = f` rows. Internally each variable is split as `x = u - v`.

use num_traits::{Signed, Zero};

use crate::exact::{QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: QVector },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost·z` from the current basic feasible solution. Columns with
    /// `allowed[j] == false` never enter. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        r -= &cost[b] * &self.rows[i][j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][j];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, j);
        }
    }
}

pub fn maximize(
    objective: &[Rational],
    inequalities: &[(QVector, Rational)],
    equations: &[(QVector, Rational)],
) -> LpOutcome {
    let d = objective.len();
    let n_ineq = inequalities.len();
    let m = n_ineq + equations.len();
    // columns: u (d), v (d), slacks (n_ineq), artificials (m)
    let n_struct = 2 * d + n_ineq;
    let ncols = n_struct + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (a, b)) in inequalities
        .iter()
        .map(|(a, b)| (a, b))
        .chain(equations.iter().map(|(a, b)| (a, b)))
        .enumerate()
    {
        assert_eq!(a.len(), d, "constraint dimension mismatch");
        let mut row = vec![Rational::zero(); ncols + 1];
        for (j, aj) in a.iter().enumerate() {
            row[j] = aj.clone();
            row[d + j] = -aj.clone();
        }
        if i < n_ineq {
            row[2 * d + i] = Rational::from_integer(1.into());
        }
        row[ncols] = b.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[n_struct + i] = Rational::from_integer(1.into());
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n_struct..ncols).collect(),
        ncols,
    };

    let mut phase1 = vec![Rational::zero(); ncols];
    for c in phase1.iter_mut().skip(n_struct) {
        *c = Rational::from_integer((-1).into());
    }
    let all = vec![true; ncols];
    t.optimize(&phase1, &all);
    let infeasibility: Rational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n_struct)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining (zero-valued) artificials out of the basis.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n_struct {
            match (0..n_struct).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut phase2 = vec![Rational::zero(); ncols];
    for (j, c) in objective.iter().enumerate() {
        phase2[j] = c.clone();
        phase2[d + j] = -c.clone();
    }
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n_struct).collect();
    if !t.optimize(&phase2, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut z = vec![Rational::zero(); ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        z[b] = t.rhs(i).clone();
    }
    let point: QVector = (0..d).map(|j| &z[j] - &z[d + j]).collect();
    let value = objective.iter().zip(&point).map(|(c, x)| c * x).sum();
    LpOutcome::Optimal { value, point }
}

pub fn minimize(
    objective: &[Rational],
    inequalities: &[(QVector, Rational)],
    equations: &[(QVector, Rational)],
) -> LpOutcome {
    let neg: QVector = objective.iter().map(|c| -c.clone()).collect();
    match maximize(&neg, inequalities, equations) {
        LpOutcome::Optimal { value, point } => LpOutcome::Optimal { value: -value, point },
        other => other,
    }
}

pub fn is_feasible(inequalities: &[(QVector, Rational)], equations: &[(QVector, Rational)], dim: usize) -> bool {
    !matches!(
        maximize(&vec![Rational::zero(); dim], inequalities, equations),
        LpOutcome::Infeasible
    )
}
