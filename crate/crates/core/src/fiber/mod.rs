//! Projections of polytopes, their fibers, chamber complexes and fiber polytopes.

mod chambers;
mod json;
mod sigma;

use num_bigint::BigInt;
use num_traits::Zero;

pub use chambers::{chamber_complex, chamber_complex_with_budget, constancy_violations, Chamber, ChamberComplex, Wall};
pub use json::{FiberPolytopeJson, ProjectionJson, WallJson};
pub use sigma::{fiber_polytope, fiber_polytope_with_budget, refined_fiber_fan, FiberPolytopeResult};

use crate::error::{Error, Result};
use crate::exact::{
    dot, dot_int, from_int, kernel_lattice_basis, solve_affine, to_rational_vec, AffineLattice, IVec, QMatrix,
    QVector, Rational,
};
use crate::polytope::{dilate_h, lattice_points, HPolytope, Polytope};

/// An affine map `x ↦ M x + offset` with integer `M`, together with a Hermite basis of
/// the kernel lattice `ker M ∩ Z^source`. Fibers are written in coordinates along
/// that basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    source_dim: usize,
    matrix: Vec<IVec>,
    offset: QVector,
    kernel_basis: Vec<IVec>,
}

impl Projection {
    pub fn new(source_dim: usize, matrix: Vec<IVec>, offset: Option<QVector>) -> Result<Self> {
        for row in &matrix {
            if row.len() != source_dim {
                return Err(Error::DimensionMismatch {
                    expected: source_dim,
                    found: row.len(),
                });
            }
        }
        let offset = offset.unwrap_or_else(|| vec![Rational::zero(); matrix.len()]);
        if offset.len() != matrix.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.len(),
                found: offset.len(),
            });
        }
        let kernel_basis = kernel_lattice_basis(&matrix, source_dim);
        Ok(Self {
            source_dim,
            matrix,
            offset,
            kernel_basis,
        })
    }

    pub fn from_ints<R: AsRef<[i64]>>(source_dim: usize, rows: &[R]) -> Result<Self> {
        let m = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(source_dim, m, None)
    }

    pub fn identity(d: usize) -> Self {
        let m = (0..d)
            .map(|i| (0..d).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        Self::new(d, m, None).expect("square identity")
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[IVec] {
        &self.matrix
    }

    pub fn linear_part(&self) -> QMatrix {
        QMatrix::from_integer_rows(&self.matrix, self.source_dim)
    }

    pub fn offset(&self) -> &[Rational] {
        &self.offset
    }

    pub fn has_offset(&self) -> bool {
        self.offset.iter().any(|x| !x.is_zero())
    }

    pub fn kernel_basis(&self) -> &[IVec] {
        &self.kernel_basis
    }

    /// Dimension of the fiber coordinate space.
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn apply(&self, x: &[Rational]) -> QVector {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, c)| dot_int(row, x) + c)
            .collect()
    }

    /// Some `x` with `M x + offset = q`, or `None` when `q` is off the image of the map.
    pub fn section(&self, q: &[Rational]) -> Option<QVector> {
        let rhs: QVector = q.iter().zip(&self.offset).map(|(a, b)| a - b).collect();
        solve_affine(&self.linear_part(), &rhs)
    }

    /// The same linear part with the offset multiplied by `k`: the natural map on `kP`.
    pub fn with_scaled_offset(&self, k: u64) -> Projection {
        let f = from_int(k as i64);
        Projection {
            offset: self.offset.iter().map(|c| c * &f).collect(),
            ..self.clone()
        }
    }

    /// `x0 + Σ y_i k_i`.
    pub fn lift(&self, x0: &[Rational], y: &[Rational]) -> QVector {
        let mut x = x0.to_vec();
        for (yi, k) in y.iter().zip(&self.kernel_basis) {
            for (xj, kj) in x.iter_mut().zip(k) {
                if !kj.is_zero() {
                    *xj += yi * Rational::from_integer(kj.clone());
                }
            }
        }
        x
    }

    fn check_source(&self, p: &Polytope) -> Result<()> {
        if p.ambient_dim() != self.source_dim {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                found: p.ambient_dim(),
            });
        }
        Ok(())
    }

    fn check_target(&self, q: &[Rational]) -> Result<()> {
        if q.len() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.target_dim(),
                found: q.len(),
            });
        }
        Ok(())
    }
}

/// Rewrites `h` in the fiber coordinates `y` of `x = x0 + Σ y_i k_i`.
fn substitute(h: &HPolytope, pi: &Projection, x0: &[Rational]) -> HPolytope {
    let k: Vec<QVector> = pi.kernel_basis.iter().map(|v| to_rational_vec(v)).collect();
    let rewrite = |(a, b): &(QVector, Rational)| {
        let row: QVector = k.iter().map(|kv| dot(a, kv)).collect();
        (row, b - dot(a, x0))
    };
    HPolytope {
        ambient_dim: pi.kernel_dim(),
        inequalities: h.inequalities.iter().map(rewrite).collect(),
        equations: h.equations.iter().map(rewrite).collect(),
    }
}

/// The fiber `P ∩ π⁻¹(q)` in kernel coordinates.
pub fn fiber_over(p: &Polytope, pi: &Projection, q: &[Rational]) -> Result<Polytope> {
    pi.check_source(p)?;
    pi.check_target(q)?;
    let x0 = pi.section(q).ok_or(Error::OutsideImage)?;
    let h = substitute(&p.h_representation(), pi, &x0);
    Polytope::from_h(&h).map_err(|e| match e {
        Error::Empty => Error::OutsideImage,
        other => other,
    })
}

/// The fiber of `kP` over `k·mu` together with its points in an affine lattice.
#[derive(Debug, Clone)]
pub struct QuotientFiber {
    /// In kernel coordinates.
    pub fiber: Polytope,
    /// Lattice points in source coordinates, sorted.
    pub points: Vec<IVec>,
}

impl QuotientFiber {
    pub fn lattice_count(&self) -> usize {
        self.points.len()
    }
}

/// Fiber of `dilate(P, k)` over `k·mu` (the offset of `pi` scaled by `k` as well) and the
/// points of `lattice` on it, counted in source coordinates.
pub fn quotient_polytope(
    p: &Polytope,
    pi: &Projection,
    mu: &[Rational],
    k: u64,
    lattice: &AffineLattice,
) -> Result<QuotientFiber> {
    pi.check_source(p)?;
    pi.check_target(mu)?;
    if lattice.ambient_dim() != pi.source_dim {
        return Err(Error::DimensionMismatch {
            expected: pi.source_dim,
            found: lattice.ambient_dim(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidArgument("dilation factor must be positive".into()));
    }
    let kf = from_int(k as i64);
    let target: QVector = mu.iter().map(|m| m * &kf).collect();
    let dilated = p.dilate(k)?;
    let scaled = pi.with_scaled_offset(k);
    let fiber = fiber_over(&dilated, &scaled, &target)?;
    let mut h = dilate_h(&p.h_representation(), k)?;
    for ((row, c), t) in scaled.matrix.iter().zip(&scaled.offset).zip(&target) {
        h.equations.push((to_rational_vec(row), t - c));
    }
    let points = lattice_points(&h, lattice)?;
    Ok(QuotientFiber { fiber, points })
}
