use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::integer_solve;
use super::rational::IVec;
use crate::error::{Error, Result};

/// `m·x ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub coefficients: Vec<i64>,
    pub modulus: i64,
    pub residue: i64,
}

/// An affine sublattice of `Z^d` cut out by congruences. With no congruences this is
/// the full lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineLattice {
    ambient_dim: usize,
    congruences: Vec<Congruence>,
}

impl AffineLattice {
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            congruences: Vec::new(),
        }
    }

    /// Validates every congruence and rejects systems with no integer solution.
    pub fn new(ambient_dim: usize, congruences: Vec<Congruence>) -> Result<Self> {
        for c in &congruences {
            if c.coefficients.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: c.coefficients.len(),
                });
            }
            if c.modulus < 1 || c.residue < 0 || c.residue >= c.modulus {
                return Err(Error::InvalidArgument(format!(
                    "congruence needs modulus >= 1 and 0 <= residue < modulus, got {} mod {}",
                    c.residue, c.modulus
                )));
            }
        }
        let lattice = Self {
            ambient_dim,
            congruences,
        };
        if lattice.witness().is_none() {
            return Err(Error::Empty);
        }
        Ok(lattice)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn is_full(&self) -> bool {
        self.congruences.is_empty()
    }

    /// Some lattice point, found by solving `m_j·x - μ_j y_j = ρ_j` over the integers.
    pub fn witness(&self) -> Option<IVec> {
        let d = self.ambient_dim;
        let k = self.congruences.len();
        let rows: Vec<IVec> = self
            .congruences
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut row: IVec = c.coefficients.iter().map(|&x| BigInt::from(x)).collect();
                row.extend((0..k).map(|i| if i == j { BigInt::from(-c.modulus) } else { BigInt::zero() }));
                row
            })
            .collect();
        let rhs: IVec = self.congruences.iter().map(|c| BigInt::from(c.residue)).collect();
        integer_solve(&rows, d + k, &rhs).map(|mut z| {
            z.truncate(d);
            z
        })
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        debug_assert_eq!(x.len(), self.ambient_dim);
        self.congruences.iter().all(|c| {
            let s: BigInt = c
                .coefficients
                .iter()
                .zip(x)
                .map(|(&m, xi)| BigInt::from(m) * xi)
                .sum();
            s.mod_floor(&BigInt::from(c.modulus)) == BigInt::from(c.residue)
        })
    }

    /// Whether the lattice agrees with `Z^d` after dropping congruences that every
    /// integer point satisfies.
    pub fn is_trivially_full(&self) -> bool {
        self.congruences
            .iter()
            .all(|c| c.modulus == 1 || (c.residue == 0 && c.coefficients.iter().all(|m| m % c.modulus == 0)))
    }
}
