//! Rational polyhedral fans: normal fans of polytopes, common refinements, equality,
//! completeness and f-vectors.

mod cone;
mod json;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cone::Cone;
pub use json::FanJson;

use crate::error::{Error, Result};
use crate::exact::{dot_ints, sign_normalized, IVec};
use crate::polytope::Polytope;

/// Number of cones in each dimension `0..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

/// A fan given by its maximal cones, stored in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(ambient_dim: usize, cones: Vec<Cone>) -> Result<Self> {
        for c in &cones {
            if c.ambient_dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: c.ambient_dim(),
                });
            }
        }
        let cones: Vec<Cone> = cones.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(Self { ambient_dim, cones })
    }

    /// The fan whose only cone is the whole space.
    pub fn trivial(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            cones: vec![Cone::full_space(ambient_dim)],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    /// Deduplicated, sorted rays of all maximal cones.
    pub fn rays(&self) -> Vec<IVec> {
        self.cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Ray indices (into [`Fan::rays`]) of each maximal cone, ascending.
    pub fn cone_ray_indices(&self) -> Vec<Vec<usize>> {
        let rays = self.rays();
        self.cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c
                    .rays()
                    .iter()
                    .map(|r| rays.binary_search(r).expect("ray is listed"))
                    .collect();
                idx.sort_unstable();
                idx
            })
            .collect()
    }

    /// Common lineality space of the maximal cones, if they all agree.
    pub fn lineality(&self) -> Option<&[IVec]> {
        let first = self.cones.first()?.lineality();
        self.cones.iter().all(|c| c.lineality() == first).then_some(first)
    }

    /// All pairwise intersections of maximal cones, keeping those of maximal dimension.
    pub fn refine(&self, other: &Fan) -> Result<Fan> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        let pairs: Vec<(&Cone, &Cone)> = self
            .cones
            .iter()
            .flat_map(|a| other.cones.iter().map(move |b| (a, b)))
            .collect();
        let meets: Vec<Cone> = pairs.par_iter().map(|(a, b)| a.intersect(b)).collect();
        let top = meets.iter().map(Cone::dim).max().unwrap_or(0);
        Fan::new(self.ambient_dim, meets.into_iter().filter(|c| c.dim() == top).collect())
    }

    /// Common refinement of many fans. Duplicate inputs are refined once.
    pub fn refine_all<'a, I>(ambient_dim: usize, fans: I) -> Result<Fan>
    where
        I: IntoIterator<Item = &'a Fan>,
    {
        let unique: BTreeSet<&Vec<Cone>> = fans
            .into_iter()
            .map(|f| {
                if f.ambient_dim != ambient_dim {
                    Err(Error::DimensionMismatch {
                        expected: ambient_dim,
                        found: f.ambient_dim,
                    })
                } else {
                    Ok(&f.cones)
                }
            })
            .collect::<Result<_>>()?;
        let mut acc = Fan::trivial(ambient_dim);
        for cones in unique {
            acc = acc.refine(&Fan {
                ambient_dim,
                cones: cones.clone(),
            })?;
        }
        Ok(acc)
    }

    /// Every facet of every maximal cone is shared with exactly one other maximal cone,
    /// and every maximal cone is full-dimensional.
    pub fn is_complete(&self) -> bool {
        if self.cones.is_empty() || self.cones.iter().any(|c| !c.is_full_dimensional()) {
            return false;
        }
        let mut sides: BTreeMap<(IVec, Vec<IVec>, Vec<IVec>), usize> = BTreeMap::new();
        for c in &self.cones {
            for (normal, rays) in c.facets() {
                let key = (sign_normalized(normal), rays, c.lineality().to_vec());
                *sides.entry(key).or_default() += 1;
            }
        }
        sides.values().all(|&k| k == 2)
    }

    /// Counts of distinct cones per dimension, enumerated from the maximal cones.
    pub fn f_vector(&self) -> FVector {
        let mut seen: BTreeSet<(Vec<IVec>, Vec<IVec>)> = BTreeSet::new();
        let mut counts = vec![0; self.ambient_dim + 1];
        for c in &self.cones {
            for set in c.face_ray_sets() {
                let rays: Vec<IVec> = set.iter().map(|&i| c.rays()[i].clone()).collect();
                if seen.insert((rays, c.lineality().to_vec())) {
                    counts[c.face_dim(&set)] += 1;
                }
            }
        }
        FVector(counts)
    }

    /// Pairwise intersections of maximal cones are faces of both.
    pub fn is_proper(&self) -> bool {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let meet = a.intersect(b);
                if !is_face_of(&meet, a) || !is_face_of(&meet, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Whether `face ⊆ cone` is a face: it must equal the smallest face of `cone`
/// containing its relative interior point.
fn is_face_of(face: &Cone, cone: &Cone) -> bool {
    let p = face.interior_point();
    if !cone.contains_int(&p) {
        return false;
    }
    let mut eqs: Vec<IVec> = cone.equations().to_vec();
    eqs.extend(
        cone.facet_normals()
            .iter()
            .filter(|n| dot_ints(n, &p).is_zero())
            .cloned(),
    );
    let smallest = Cone::from_inequalities(cone.ambient_dim(), cone.facet_normals(), &eqs);
    smallest == *face
}

/// Normal fan in the ambient coordinates of `p`: the maximal cone at a vertex is
/// generated by the outer normals of the facets through it, plus the lineality space
/// spanned by the normals of the affine hull.
pub fn normal_fan_ambient(p: &Polytope) -> Fan {
    let d = p.ambient_dim();
    let lineality: Vec<IVec> = p.equations().iter().map(|(c, _)| c.clone()).collect();
    let facets = p.facets();
    let cones = (0..p.vertices().len())
        .map(|i| {
            let gens: Vec<IVec> = facets
                .iter()
                .filter(|f| f.vertices.binary_search(&i).is_ok())
                .map(|f| f.normal.clone())
                .collect();
            Cone::from_generators(d, &gens, &lineality)
        })
        .collect();
    Fan::new(d, cones).expect("cones share the ambient dimension")
}

/// Normal fan in the dual of the direction space of `aff(p)`, using the lattice
/// coordinates of the affine hull. Its dimension equals `dim p`.
pub fn normal_fan(p: &Polytope) -> Fan {
    let frame = p.frame();
    let k = frame.dim();
    let coords: Vec<_> = p.vertices().iter().map(|v| frame.coords(v)).collect();
    let q = Polytope::from_points(k, coords).expect("nonempty");
    normal_fan_ambient(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, QVector};
    use num_bigint::BigInt;

    fn iv(v: &[i64]) -> IVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(v: &[i64]) -> QVector {
        v.iter().map(|&x| from_int(x)).collect()
    }

    fn fan_from(dim: usize, cones: &[&[&[i64]]]) -> Fan {
        let cs = cones
            .iter()
            .map(|rays| Cone::from_generators(dim, &rays.iter().map(|r| iv(r)).collect::<Vec<_>>(), &[]))
            .collect();
        Fan::new(dim, cs).unwrap()
    }

    fn quadrant_fan() -> Fan {
        fan_from(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, 0]], &[&[-1, 0], &[0, -1]], &[&[0, -1], &[1, 0]]])
    }

    fn diagonal_fan() -> Fan {
        fan_from(2, &[&[&[1, 1], &[-1, 1]], &[&[-1, 1], &[-1, -1]], &[&[-1, -1], &[1, -1]], &[&[1, -1], &[1, 1]]])
    }

    fn octahedron() -> Polytope {
        let mut pts = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                let mut v = vec![from_int(0); 4];
                v[i] = from_int(1);
                v[j] = from_int(1);
                pts.push(v);
            }
        }
        Polytope::from_points(4, pts).unwrap()
    }

    #[test]
    fn segment_normal_fan() {
        let s = Polytope::from_points(1, vec![q(&[0]), q(&[1])]).unwrap();
        let f = normal_fan(&s);
        assert_eq!(f.rays(), vec![iv(&[-1]), iv(&[1])]);
        assert_eq!(f.maximal_cones().len(), 2);
        assert!(f.is_complete());
        assert_eq!(f.f_vector(), FVector(vec![1, 2]));
    }

    #[test]
    fn square_normal_fan_is_quadrants() {
        let sq = Polytope::from_points(2, vec![q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])]).unwrap();
        let f = normal_fan(&sq);
        assert_eq!(f, quadrant_fan());
        assert_eq!(f.f_vector(), FVector(vec![1, 4, 4]));
    }

    #[test]
    fn octahedron_normal_fan() {
        let f = normal_fan(&octahedron());
        assert_eq!(f.ambient_dim(), 3);
        assert_eq!(f.maximal_cones().len(), 6);
        assert_eq!(f.rays().len(), 8);
        assert!(f.is_complete());
        assert!(f.is_proper());
        assert_eq!(f.f_vector(), FVector(vec![1, 8, 12, 6]));
    }

    #[test]
    fn octahedron_ambient_fan_carries_lineality() {
        let f = normal_fan_ambient(&octahedron());
        assert_eq!(f.ambient_dim(), 4);
        assert_eq!(f.maximal_cones().len(), 6);
        assert_eq!(f.lineality().unwrap(), &[iv(&[1, 1, 1, 1])]);
        assert!(f.is_complete());
    }

    #[test]
    fn refine_examples() {
        let quad = quadrant_fan();
        assert_eq!(quad.refine(&quad).unwrap(), quad);
        let both = quad.refine(&diagonal_fan()).unwrap();
        assert_eq!(both.maximal_cones().len(), 8);
        assert_eq!(both.rays().len(), 8);
        assert!(both.is_complete());
        assert_eq!(both, diagonal_fan().refine(&quad).unwrap());
        assert_ne!(quad, diagonal_fan());
    }

    #[test]
    fn halflines_refined_with_the_line() {
        let halves = Fan::new(
            1,
            vec![
                Cone::from_inequalities(1, &[iv(&[1])], &[]),
                Cone::from_inequalities(1, &[iv(&[-1])], &[]),
            ],
        )
        .unwrap();
        let r = halves.refine(&Fan::trivial(1)).unwrap();
        assert_eq!(r.rays(), vec![iv(&[-1]), iv(&[1])]);
        assert!(r.is_complete());
    }

    #[test]
    fn completeness() {
        assert!(!fan_from(2, &[&[&[1, 0], &[0, 1]]]).is_complete());
        assert!(Fan::trivial(0).is_complete());
        assert!(Fan::trivial(2).is_complete());
        assert!(quadrant_fan().is_complete());
    }
}
