//! Grassmannian and flag models: the second hypersimplex, the Gelfand–Tsetlin polytope
//! of polygon side lengths and diagonals, type A root data, and the counting oracles
//! used to check Hilbert functions.

mod hilbert;
mod oracles;
mod roots;

use num_bigint::BigInt;
use num_traits::Zero;

pub use hilbert::{ehrhart_count, hilbert_data, invariant_count, invariant_count_in, HilbertData, InvariantCount, WeightCount};
pub use oracles::{kostka, weyl_dim};
pub use roots::{
    gt_pattern_polytope, gt_pattern_polytope_h, gt_string_polytope, pattern_to_string, pi_lambda, standard_word,
    weight_polytope, RootDataA,
};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{from_int, AffineLattice, Congruence, QVector, Rational};
use crate::fiber::{fiber_polytope_with_budget, FiberPolytopeResult, Projection};
use crate::polytope::{HPolytope, Polytope};

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be at least 3, got {n}")));
    }
    Ok(())
}

fn unit(d: usize, i: usize, value: i64) -> QVector {
    let mut v = vec![Rational::zero(); d];
    v[i] = from_int(value);
    v
}

fn hypersimplex_rows(n: usize, d: usize) -> (Vec<(QVector, Rational)>, Vec<(QVector, Rational)>) {
    let mut ineqs = Vec::with_capacity(2 * n);
    for i in 0..n {
        ineqs.push((unit(d, i, -1), from_int(0)));
        ineqs.push((unit(d, i, 1), from_int(1)));
    }
    let mut sum = vec![Rational::zero(); d];
    for s in sum.iter_mut().take(n) {
        *s = from_int(1);
    }
    (ineqs, vec![(sum, from_int(2))])
}

/// `{r ∈ R^n : 0 <= r_i <= 1, Σ r_i = 2}` as inequalities.
pub fn hypersimplex_h(n: usize) -> Result<HPolytope> {
    check_n(n)?;
    let (ineqs, eqs) = hypersimplex_rows(n, n);
    HPolytope::new(n, ineqs, eqs)
}

pub fn hypersimplex(n: usize) -> Result<Polytope> {
    Polytope::from_h(&hypersimplex_h(n)?)
}

/// Position of the diagonal `d_i` (`1 <= i <= n-1`) in the coordinates
/// `(r_1, …, r_n, d_2, …, d_{n-2})`, where `d_1 = r_1` and `d_{n-1} = r_n`.
pub fn diagonal_index(n: usize, i: usize) -> usize {
    match i {
        1 => 0,
        _ if i == n - 1 => n - 1,
        _ => n + i - 2,
    }
}

/// The polytope of side lengths `r` and diagonals `d` of closed polygons: the
/// hypersimplex constraints on `r` and, for `i = 1..n-2`,
/// `d_i - d_{i+1} <= r_{i+1}`, `d_{i+1} - d_i <= r_{i+1}`, `r_{i+1} <= d_i + d_{i+1}`.
pub fn gt_polytope_h(n: usize) -> Result<HPolytope> {
    check_n(n)?;
    let d = 2 * n - 3;
    let (mut ineqs, eqs) = hypersimplex_rows(n, d);
    for i in 1..=n - 2 {
        let a = diagonal_index(n, i);
        let b = diagonal_index(n, i + 1);
        let r = i;
        let mut row = |ca: i64, cb: i64, cr: i64| {
            let mut v = vec![Rational::zero(); d];
            v[a] += from_int(ca);
            v[b] += from_int(cb);
            v[r] += from_int(cr);
            ineqs.push((v, from_int(0)));
        };
        row(1, -1, -1);
        row(-1, 1, -1);
        row(-1, -1, 1);
    }
    HPolytope::new(d, ineqs, eqs)
}

pub fn gt_polytope(n: usize) -> Result<Polytope> {
    Polytope::from_h(&gt_polytope_h(n)?)
}

/// Forgets the diagonals: `R^{2n-3} -> R^n`.
pub fn phi(n: usize) -> Result<Projection> {
    check_n(n)?;
    let d = 2 * n - 3;
    let rows = (0..n)
        .map(|i| (0..d).map(|j| BigInt::from(u8::from(i == j))).collect())
        .collect();
    Projection::new(d, rows, None)
}

/// Integer points with `d_i ≡ r_1 + … + r_i (mod 2)` for `i = 2..n-2`.
pub fn parity_lattice(n: usize) -> Result<AffineLattice> {
    check_n(n)?;
    let d = 2 * n - 3;
    let congruences = (2..=n.saturating_sub(2))
        .map(|i| {
            let mut c = vec![0i64; d];
            c[diagonal_index(n, i)] = 1;
            for r in c.iter_mut().take(i) {
                *r = -1;
            }
            Congruence {
                coefficients: c,
                modulus: 2,
                residue: 0,
            }
        })
        .collect();
    AffineLattice::new(d, congruences)
}

pub fn nbar_fan(n: usize) -> Result<FiberPolytopeResult> {
    nbar_fan_with_budget(n, &Budget::unlimited())
}

/// The fiber polytope of the diagonal-forgetting projection of the polygon polytope.
pub fn nbar_fan_with_budget(n: usize, budget: &Budget) -> Result<FiberPolytopeResult> {
    let p = gt_polytope(n)?;
    fiber_polytope_with_budget(&p, &phi(n)?, budget)
}
