use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{gt_polytope, gt_polytope_h, kostka, parity_lattice, phi, weyl_dim};
use crate::error::{Error, Result};
use crate::exact::{rat, AffineLattice, IVec};
use crate::fiber::quotient_polytope;
use crate::polytope::{dilate_h, lattice_points};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCount {
    pub weight: Vec<i64>,
    pub count: usize,
    pub kostka: u64,
}

/// Lattice points of `kΓ` against the dimension of the module with highest weight
/// `(k, k, 0, …, 0)`, in total and weight by weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub n: usize,
    pub k: u64,
    pub total_count: usize,
    pub oracle_dim: u64,
    pub per_weight: Vec<WeightCount>,
    /// Lattice points grouped by weight, kept so that mismatches can be witnessed.
    #[serde(skip)]
    pub points: Vec<IVec>,
}

impl HilbertData {
    pub fn total_matches(&self) -> bool {
        self.total_count as u64 == self.oracle_dim
    }

    pub fn weight_mismatches(&self) -> Vec<&WeightCount> {
        self.per_weight.iter().filter(|w| w.count as u64 != w.kostka).collect()
    }
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("coordinate fits in i64")
}

/// Integer vectors `r` with `0 <= r_i <= k` and `Σ r_i = 2k`.
fn integral_weights(n: usize, k: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, k: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (n - cur.len()) as i64;
        for v in 0..=k.min(left) {
            if left - v <= k * (slots - 1) {
                cur.push(v);
                go(n, k, left - v, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, 2 * k, &mut Vec::new(), &mut out);
    out
}

pub fn ehrhart_count(n: usize, k: u64) -> Result<HilbertData> {
    hilbert_data(n, k, &parity_lattice(n)?)
}

/// Counts the points of `lattice` in `kΓ` and compares with the hook-content dimension
/// and, for every integral weight of `kΔ`, with the Kostka number.
pub fn hilbert_data(n: usize, k: u64, lattice: &AffineLattice) -> Result<HilbertData> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let h = dilate_h(&gt_polytope_h(n)?, k)?;
    let points = lattice_points(&h, lattice)?;
    let mut by_weight: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for p in &points {
        *by_weight.entry(p[..n].iter().map(to_i64).collect()).or_default() += 1;
    }
    let ki = k as i64;
    let per_weight = integral_weights(n, ki)
        .into_par_iter()
        .map(|w| {
            let kostka = kostka(&[ki, ki], &w)?;
            Ok(WeightCount {
                count: by_weight.get(&w).copied().unwrap_or(0),
                weight: w,
                kostka,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let oracle = weyl_dim(&[ki, ki], n)?;
    Ok(HilbertData {
        n,
        k,
        total_count: points.len(),
        oracle_dim: u64::try_from(&oracle).map_err(|_| Error::SizeGuard(format!("dimension {oracle}")))?,
        per_weight,
        points,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCount {
    pub n: usize,
    pub k: u64,
    pub weight: Vec<i64>,
    pub count: usize,
    pub kostka: u64,
}

/// Parity-lattice points in the fiber of `kΓ` over the balanced weight
/// `(2k/n, …, 2k/n)`, against the Kostka number of `(k, k)` with that content.
pub fn invariant_count(n: usize, k: u64) -> Result<InvariantCount> {
    invariant_count_in(n, k, &parity_lattice(n)?)
}

/// [`invariant_count`] against an arbitrary lattice on the polygon coordinates.
pub fn invariant_count_in(n: usize, k: u64, lattice: &AffineLattice) -> Result<InvariantCount> {
    let two_k = 2 * k as usize;
    if k == 0 || !two_k.is_multiple_of(n) {
        return Err(Error::NonIntegralLinearization { n, two_k });
    }
    let mu = vec![rat(2, n as i64); n];
    let fiber = quotient_polytope(&gt_polytope(n)?, &phi(n)?, &mu, k, lattice)?;
    let weight = vec![(two_k / n) as i64; n];
    let ki = k as i64;
    Ok(InvariantCount {
        n,
        k,
        count: fiber.lattice_count(),
        kostka: kostka(&[ki, ki], &weight)?,
        weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_of_dilated_hypersimplex() {
        assert_eq!(integral_weights(4, 1).len(), 6);
        assert_eq!(integral_weights(4, 2).len(), 19);
    }

    #[test]
    fn small_hilbert_values() {
        let h = ehrhart_count(4, 1).unwrap();
        assert_eq!((h.total_count, h.oracle_dim), (6, 6));
        let h = ehrhart_count(4, 2).unwrap();
        assert_eq!((h.total_count, h.oracle_dim), (20, 20));
        assert!(h.weight_mismatches().is_empty());
        let full = hilbert_data(4, 2, &AffineLattice::full(5)).unwrap();
        assert_eq!(full.total_count, 21);
    }

    #[test]
    fn invariant_values() {
        let c = invariant_count(4, 2).unwrap();
        assert_eq!((c.count, c.kostka), (2, 2));
        let c = invariant_count(4, 4).unwrap();
        assert_eq!((c.count, c.kostka), (3, 3));
        assert!(matches!(invariant_count(4, 1), Err(Error::NonIntegralLinearization { n: 4, two_k: 2 })));
    }
}
