use num_bigint::BigInt;
use num_traits::Zero;

use crate::dd::{cone_generators, ConeGenerators};
use crate::exact::{
    dot_int, dot_ints, hermite_rows, primitive, project_orthogonal, rank_int, scale_to_integers,
    to_rational_vec, IVec, Rational,
};

/// A rational polyhedral cone in canonical dual description.
///
/// * `rays`: primitive generators modulo the lineality space, each orthogonal to it.
/// * `lineality`: Hermite basis of the lineality space.
/// * `facet_normals`: primitive inner normals (`n·x >= 0`), orthogonal to `equations`.
/// * `equations`: Hermite basis of the orthogonal complement of the linear span.
///
/// Two cones are equal as sets iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<IVec>,
    lineality: Vec<IVec>,
    facet_normals: Vec<IVec>,
    equations: Vec<IVec>,
}

fn canonical_vectors(vs: &[IVec], against: &[IVec]) -> Vec<IVec> {
    let mut out: Vec<IVec> = vs
        .iter()
        .map(|v| primitive(&scale_to_integers(&project_orthogonal(&to_rational_vec(v), against))))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl Cone {
    fn assemble(ambient_dim: usize, primal: ConeGenerators, dual: ConeGenerators) -> Self {
        let lineality = hermite_rows(&primal.lineality, ambient_dim);
        let equations = hermite_rows(&dual.lineality, ambient_dim);
        let rays = canonical_vectors(&primal.rays, &lineality);
        let facet_normals = canonical_vectors(&dual.rays, &equations);
        Self {
            ambient_dim,
            rays,
            lineality,
            facet_normals,
            equations,
        }
    }

    /// `{x : n·x >= 0 for every normal, e·x = 0 for every equation}`.
    pub fn from_inequalities(ambient_dim: usize, normals: &[IVec], equations: &[IVec]) -> Self {
        let primal = cone_generators(ambient_dim, normals, equations);
        let dual = cone_generators(ambient_dim, &primal.rays, &primal.lineality);
        Self::assemble(ambient_dim, primal, dual)
    }

    /// Conical hull of `rays` plus the linear span of `lineality`.
    pub fn from_generators(ambient_dim: usize, rays: &[IVec], lineality: &[IVec]) -> Self {
        let dual = cone_generators(ambient_dim, rays, lineality);
        let primal = cone_generators(ambient_dim, &dual.rays, &dual.lineality);
        Self::assemble(ambient_dim, primal, dual)
    }

    /// The whole space.
    pub fn full_space(ambient_dim: usize) -> Self {
        Self::from_inequalities(ambient_dim, &[], &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IVec] {
        &self.lineality
    }

    pub fn facet_normals(&self) -> &[IVec] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[IVec] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot_int(e, x).is_zero())
            && self.facet_normals.iter().all(|n| dot_int(n, x) >= Rational::zero())
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot_ints(e, x).is_zero())
            && self.facet_normals.iter().all(|n| dot_ints(n, x) >= BigInt::zero())
    }

    /// Sum of the rays: a point of the relative interior.
    pub fn interior_point(&self) -> IVec {
        let mut p = vec![BigInt::zero(); self.ambient_dim];
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += ri;
            }
        }
        p
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let normals: Vec<IVec> = self.facet_normals.iter().chain(&other.facet_normals).cloned().collect();
        let eqs: Vec<IVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_inequalities(self.ambient_dim, &normals, &eqs)
    }

    /// Self-consistency of the dual description: every ray and lineality vector
    /// satisfies every constraint, and regenerating from either side is a fixed point.
    pub fn is_consistent(&self) -> bool {
        let ok_rays = self.rays.iter().all(|r| {
            self.facet_normals.iter().all(|n| dot_ints(n, r) >= BigInt::zero())
                && self.equations.iter().all(|e| dot_ints(e, r).is_zero())
        });
        let ok_lin = self.lineality.iter().all(|l| {
            self.facet_normals.iter().all(|n| dot_ints(n, l).is_zero())
                && self.equations.iter().all(|e| dot_ints(e, l).is_zero())
        });
        ok_rays
            && ok_lin
            && Cone::from_generators(self.ambient_dim, &self.rays, &self.lineality) == *self
            && Cone::from_inequalities(self.ambient_dim, &self.facet_normals, &self.equations) == *self
    }

    /// Faces as ray subsets (indices into `rays()`), from the closure of the facet
    /// ray sets under intersection. Includes the cone itself and the lineality face.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let facet_sets: Vec<Vec<usize>> = self
            .facet_normals
            .iter()
            .map(|n| {
                (0..self.rays.len())
                    .filter(|&i| dot_ints(n, &self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert((0..self.rays.len()).collect::<Vec<_>>());
        let mut stack = facet_sets.clone();
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for f in &facet_sets {
                let t: Vec<usize> = s.iter().copied().filter(|i| f.contains(i)).collect();
                if !seen.contains(&t) {
                    stack.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Dimension of the face spanned by the given rays and the lineality space.
    pub fn face_dim(&self, ray_set: &[usize]) -> usize {
        let gens: Vec<IVec> = ray_set
            .iter()
            .map(|&i| self.rays[i].clone())
            .chain(self.lineality.iter().cloned())
            .collect();
        rank_int(&gens, self.ambient_dim)
    }

    /// Facets as `(inner normal, rays on the facet)`.
    pub fn facets(&self) -> Vec<(IVec, Vec<IVec>)> {
        self.facet_normals
            .iter()
            .map(|n| {
                let on = self.rays.iter().filter(|r| dot_ints(n, r).is_zero()).cloned().collect();
                (n.clone(), on)
            })
            .collect()
    }
}
