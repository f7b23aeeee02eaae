//! Dual-description convex polytopes.
//!
//! A [`Polytope`] always carries its irredundant, canonically sorted vertex list.
//! The facet description, affine frame and face lattice are derived lazily and cached.

pub(crate) mod json;
mod lattice_points;
mod ops;
mod volume;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dd::cone_generators;
use crate::error::{Error, Result};
use crate::exact::{
    kernel_lattice_basis, rank_int, scale_to_integers, solve_affine, to_rational_vec, AffineFrame,
    IVec, QMatrix, QVector, Rational,
};

pub use json::{HPolytopeJson, PolytopeJson, RationalToken};
pub use lattice_points::{coordinate_bounds, lattice_points};
pub use ops::{dilate_h, intersect, minkowski_weighted};

use crate::exact::{dot as dot_q, dot_int};

/// `a·x <= b` rows and `c·x = d` rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub ambient_dim: usize,
    pub inequalities: Vec<(QVector, Rational)>,
    pub equations: Vec<(QVector, Rational)>,
}

impl HPolytope {
    pub fn new(
        ambient_dim: usize,
        inequalities: Vec<(QVector, Rational)>,
        equations: Vec<(QVector, Rational)>,
    ) -> Result<Self> {
        for (a, _) in inequalities.iter().chain(&equations) {
            if a.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: a.len(),
                });
            }
        }
        Ok(Self {
            ambient_dim,
            inequalities,
            equations,
        })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|(a, b)| dot_q(a, x) <= *b)
            && self.equations.iter().all(|(c, d)| dot_q(c, x) == *d)
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.contains(&to_rational_vec(x))
    }

    /// Constraint rows `a·x <= b` with `a = 0, b < 0`: trivially infeasible rows.
    pub fn has_contradictory_row(&self) -> bool {
        self.inequalities
            .iter()
            .any(|(a, b)| a.iter().all(Zero::is_zero) && b.is_negative())
    }

    /// Vertex enumeration by double description.
    pub fn to_v(&self) -> Result<VPolytope> {
        let vertices = enumerate_vertices(self)?;
        Ok(VPolytope {
            ambient_dim: self.ambient_dim,
            vertices,
        })
    }
}

/// Irredundant, canonically sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<QVector>,
}

impl VPolytope {
    /// Convex hull of arbitrary points, reduced to its vertices.
    pub fn hull(ambient_dim: usize, points: Vec<QVector>) -> Result<Self> {
        let p = Polytope::from_points(ambient_dim, points)?;
        Ok(p.to_vpolytope())
    }

    /// Irredundant facets plus affine-hull equations.
    pub fn to_h(&self) -> Result<HPolytope> {
        Ok(Polytope::from_points(self.ambient_dim, self.vertices.clone())?.h_representation())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Primitive integer outer normal, lying in the direction space of the affine hull.
    pub normal: IVec,
    pub rhs: Rational,
    /// Indices into the parent vertex list of the vertices on this facet.
    pub vertices: Vec<usize>,
}

/// A face, given by the indices of its vertices in the parent polytope's vertex list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

#[derive(Debug)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<QVector>,
    frame: OnceLock<AffineFrame>,
    facets: OnceLock<Vec<Facet>>,
    faces: OnceLock<Vec<Face>>,
}

impl Clone for Polytope {
    fn clone(&self) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            frame: self.frame.clone(),
            facets: self.facets.clone(),
            faces: self.faces.clone(),
        }
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl Polytope {
    fn from_sorted_vertices(ambient_dim: usize, vertices: Vec<QVector>) -> Self {
        Self {
            ambient_dim,
            vertices,
            frame: OnceLock::new(),
            facets: OnceLock::new(),
            faces: OnceLock::new(),
        }
    }

    pub fn from_h(h: &HPolytope) -> Result<Self> {
        let v = h.to_v()?;
        Ok(Self::from_sorted_vertices(h.ambient_dim, v.vertices))
    }

    /// Convex hull of a point set. Duplicate and interior points are discarded.
    pub fn from_points(ambient_dim: usize, points: Vec<QVector>) -> Result<Self> {
        for p in &points {
            if p.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: p.len(),
                });
            }
        }
        let points: Vec<QVector> = points.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if points.is_empty() {
            return Err(Error::Empty);
        }
        let (frame, facets) = hull_facets(&points);
        let k = frame.dim();
        let vertices: Vec<QVector> = points
            .into_iter()
            .filter(|p| {
                if k == 0 {
                    return true;
                }
                let tight: Vec<IVec> = facets
                    .iter()
                    .filter(|(n, rhs)| dot_int(n, p) == *rhs)
                    .map(|(n, _)| n.clone())
                    .collect();
                rank_int(&tight, ambient_dim) == k
            })
            .collect();
        let poly = Self::from_sorted_vertices(ambient_dim, vertices);
        let _ = poly.frame.set(frame);
        let facets = facets
            .into_iter()
            .map(|(normal, rhs)| {
                let vertices = poly
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| dot_int(&normal, v) == rhs)
                    .map(|(i, _)| i)
                    .collect();
                Facet { normal, rhs, vertices }
            })
            .collect();
        let _ = poly.facets.set(facets);
        Ok(poly)
    }

    pub fn point(p: QVector) -> Self {
        let d = p.len();
        Self::from_sorted_vertices(d, vec![p])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn to_vpolytope(&self) -> VPolytope {
        VPolytope {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
        }
    }

    pub fn frame(&self) -> &AffineFrame {
        self.frame.get_or_init(|| AffineFrame::new(&self.vertices))
    }

    pub fn dimension(&self) -> usize {
        self.frame().dim()
    }

    /// Irredundant facets, sorted by normal.
    pub fn facets(&self) -> &[Facet] {
        self.facets.get_or_init(|| {
            let (_, facets) = hull_facets(&self.vertices);
            facets
                .into_iter()
                .map(|(normal, rhs)| {
                    let vertices = self
                        .vertices
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| dot_int(&normal, v) == rhs)
                        .map(|(i, _)| i)
                        .collect();
                    Facet { normal, rhs, vertices }
                })
                .collect()
        })
    }

    /// Equations of the affine hull as `(normal, rhs)`.
    pub fn equations(&self) -> &[(IVec, Rational)] {
        &self.frame().equations
    }

    pub fn h_representation(&self) -> HPolytope {
        let inequalities = self
            .facets()
            .iter()
            .map(|f| (to_rational_vec(&f.normal), f.rhs.clone()))
            .collect();
        let equations = self
            .equations()
            .iter()
            .map(|(c, d)| (to_rational_vec(c), d.clone()))
            .collect();
        HPolytope {
            ambient_dim: self.ambient_dim,
            inequalities,
            equations,
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.frame().contains(x)
            && self
                .facets()
                .iter()
                .all(|f| dot_int(&f.normal, x) <= f.rhs)
    }

    /// Rows: vertices, columns: facets.
    pub fn incidence(&self) -> Vec<Vec<bool>> {
        let facets = self.facets();
        (0..self.vertices.len())
            .map(|i| facets.iter().map(|f| f.vertices.binary_search(&i).is_ok()).collect())
            .collect()
    }

    /// Verifies the dual description: vertices satisfy every facet, each facet is tight
    /// on an affinely spanning vertex subset of the right size.
    pub fn check_consistency(&self) -> bool {
        let k = self.dimension();
        let frame = self.frame();
        self.vertices.iter().all(|v| frame.contains(v))
            && self.facets().iter().all(|f| {
                let on: Vec<QVector> = f.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
                !on.is_empty()
                    && self
                        .vertices
                        .iter()
                        .all(|v| dot_int(&f.normal, v) <= f.rhs)
                    && AffineFrame::new(&on).dim() + 1 == k
            })
    }
}

/// Facets of the convex hull of `points` (no duplicates), computed as the extreme rays
/// of the cone `{(a, β) : a·y <= β for every point y}` in lattice coordinates.
fn hull_facets(points: &[QVector]) -> (AffineFrame, Vec<(IVec, Rational)>) {
    let frame = AffineFrame::new(points);
    let k = frame.dim();
    if k == 0 {
        return (frame, Vec::new());
    }
    let rows: Vec<IVec> = points
        .iter()
        .map(|p| {
            let y = frame.coords(p);
            let mut row: QVector = y.into_iter().map(|x| -x).collect();
            row.push(Rational::one());
            scale_to_integers(&row)
        })
        .collect();
    let gens = cone_generators(k + 1, &rows, &[]);
    debug_assert!(gens.lineality.is_empty(), "hull dual cone must be pointed");
    let mut facets: Vec<(IVec, Rational)> = gens
        .rays
        .iter()
        .filter(|r| r[..k].iter().any(|x| !x.is_zero()))
        .map(|r| {
            let a = to_rational_vec(&r[..k]);
            let normal = frame.lift_functional(&a);
            let rhs = points
                .iter()
                .map(|p| dot_int(&normal, p))
                .max()
                .expect("nonempty point set");
            (normal, rhs)
        })
        .collect();
    facets.sort();
    facets.dedup();
    (frame, facets)
}

fn enumerate_vertices(h: &HPolytope) -> Result<Vec<QVector>> {
    let d = h.ambient_dim;
    if h.has_contradictory_row() {
        return Err(Error::Empty);
    }
    let (x0, kernel) = if h.equations.is_empty() {
        (vec![Rational::zero(); d], kernel_lattice_basis(&[], d))
    } else {
        let a = QMatrix::new(h.equations.iter().map(|(c, _)| c.clone()).collect(), d);
        let b: QVector = h.equations.iter().map(|(_, e)| e.clone()).collect();
        let x0 = solve_affine(&a, &b).ok_or(Error::Empty)?;
        (x0, kernel_lattice_basis(&a.integer_rows(), d))
    };
    let k = kernel.len();
    // Homogenized constraints on z = (y, t): (b - a·x0) t - (K a)·y >= 0, and t >= 0.
    let mut rows: Vec<IVec> = h
        .inequalities
        .iter()
        .map(|(a, b)| {
            let mut row: QVector = kernel
                .iter()
                .map(|kv| -dot_int(kv, a))
                .collect();
            row.push(b - dot_q(a, &x0));
            scale_to_integers(&row)
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); k + 1];
    t_row[k] = BigInt::one();
    rows.push(t_row);
    let gens = cone_generators(k + 1, &rows, &[]);

    let mut vertices = BTreeSet::new();
    let mut recession = !gens.lineality.is_empty();
    for r in &gens.rays {
        let t = &r[k];
        if t.is_zero() {
            recession = true;
            continue;
        }
        let t = Rational::from_integer(t.clone());
        let mut x = x0.clone();
        for (yi, kv) in r[..k].iter().zip(&kernel) {
            let yi = Rational::from_integer(yi.clone()) / &t;
            for (xj, kj) in x.iter_mut().zip(kv) {
                if !kj.is_zero() {
                    *xj += &yi * Rational::from_integer(kj.clone());
                }
            }
        }
        vertices.insert(x);
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    if recession {
        return Err(Error::Unbounded);
    }
    Ok(vertices.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, rat};

    pub(crate) fn q(v: &[i64]) -> QVector {
        v.iter().map(|&x| from_int(x)).collect()
    }

    fn octahedron_h() -> HPolytope {
        let mut ineqs = Vec::new();
        for i in 0..4 {
            let mut e = vec![from_int(0); 4];
            e[i] = from_int(1);
            ineqs.push((e.clone(), from_int(1)));
            ineqs.push((e.into_iter().map(|x| -x).collect(), from_int(0)));
        }
        HPolytope::new(4, ineqs, vec![(q(&[1, 1, 1, 1]), from_int(2))]).unwrap()
    }

    #[test]
    fn interval_vertices() {
        let h = HPolytope::new(1, vec![(q(&[1]), from_int(1)), (q(&[-1]), from_int(0))], vec![]).unwrap();
        assert_eq!(h.to_v().unwrap().vertices, vec![q(&[0]), q(&[1])]);
    }

    #[test]
    fn octahedron_vertices_match_brute_force() {
        // Oracle: every 0/1 point with coordinate sum 2.
        let mut expected = Vec::new();
        for mask in 0u32..16 {
            if mask.count_ones() == 2 {
                expected.push((0..4).map(|i| from_int(((mask >> i) & 1) as i64)).collect::<QVector>());
            }
        }
        expected.sort();
        assert_eq!(octahedron_h().to_v().unwrap().vertices, expected);
    }

    #[test]
    fn octahedron_facets() {
        let p = Polytope::from_h(&octahedron_h()).unwrap();
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.facets().len(), 8);
        assert_eq!(p.equations().len(), 1);
        assert!(p.check_consistency());
        let h = p.to_vpolytope().to_h().unwrap();
        assert_eq!(h.inequalities.len(), 8);
        assert_eq!(h.equations.len(), 1);
        for f in p.facets() {
            assert_eq!(f.vertices.len(), 3);
        }
    }

    #[test]
    fn unbounded_and_empty_are_detected() {
        let ray = HPolytope::new(1, vec![(q(&[-1]), from_int(0))], vec![]).unwrap();
        assert_eq!(ray.to_v(), Err(Error::Unbounded));
        let strip = HPolytope::new(2, vec![(q(&[1, 0]), from_int(1)), (q(&[-1, 0]), from_int(0))], vec![]).unwrap();
        assert_eq!(strip.to_v(), Err(Error::Unbounded));
        let empty = HPolytope::new(1, vec![(q(&[1]), from_int(-1)), (q(&[-1]), from_int(0))], vec![]).unwrap();
        assert_eq!(empty.to_v(), Err(Error::Empty));
        let bad_eq = HPolytope::new(1, vec![], vec![(q(&[0]), from_int(1))]).unwrap();
        assert_eq!(bad_eq.to_v(), Err(Error::Empty));
        let contradiction = HPolytope::new(1, vec![(q(&[0]), from_int(-1))], vec![]).unwrap();
        assert_eq!(contradiction.to_v(), Err(Error::Empty));
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = vec![q(&[0, 0]), q(&[2, 0]), q(&[0, 2]), q(&[2, 2]), q(&[1, 1]), q(&[1, 0]), q(&[2, 2])];
        let p = Polytope::from_points(2, pts).unwrap();
        assert_eq!(p.vertices(), &[q(&[0, 0]), q(&[0, 2]), q(&[2, 0]), q(&[2, 2])]);
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn point_and_segment_in_higher_ambient() {
        let p = Polytope::from_points(3, vec![q(&[1, 2, 3])]).unwrap();
        assert_eq!(p.dimension(), 0);
        assert!(p.facets().is_empty());
        assert_eq!(p.equations().len(), 3);
        let s = Polytope::from_points(2, vec![vec![rat(1, 2), from_int(0)], q(&[1, 1]), vec![rat(3, 4), rat(1, 2)]]).unwrap();
        assert_eq!(s.vertices().len(), 2);
        assert_eq!(s.dimension(), 1);
        assert_eq!(s.facets().len(), 2);
    }
}
