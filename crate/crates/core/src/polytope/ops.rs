use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::{dot_q, Face, HPolytope, Polytope};
use crate::error::{Error, Result};
use crate::exact::{rank_int, scale_to_integers, QMatrix, QVector, Rational};
use crate::lp::{is_feasible, maximize, LpOutcome};

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Polytope {
    pub(crate) fn affine_dim_of(&self, subset: &[usize]) -> usize {
        let Some((&first, rest)) = subset.split_first() else {
            return 0;
        };
        let base = &self.vertices[first];
        let diffs: Vec<_> = rest
            .iter()
            .map(|&i| {
                let d: QVector = self.vertices[i].iter().zip(base).map(|(a, b)| a - b).collect();
                scale_to_integers(&d)
            })
            .collect();
        rank_int(&diffs, self.ambient_dim)
    }

    /// Every nonempty face, including the polytope itself, sorted by dimension then
    /// vertex set. Faces are the closure of the facet vertex sets under intersection.
    pub fn face_lattice(&self) -> &[Face] {
        self.faces.get_or_init(|| {
            let all: Vec<usize> = (0..self.vertices.len()).collect();
            let facets = self.facets();
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            seen.insert(all);
            let mut stack: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
            while let Some(s) = stack.pop() {
                if s.is_empty() || !seen.insert(s.clone()) {
                    continue;
                }
                for f in facets {
                    let t = intersect_sorted(&s, &f.vertices);
                    if !t.is_empty() && t.len() < s.len() && !seen.contains(&t) {
                        stack.push(t);
                    }
                }
            }
            let mut faces: Vec<Face> = seen
                .into_iter()
                .map(|vertices| Face {
                    dim: self.affine_dim_of(&vertices),
                    vertices,
                })
                .collect();
            faces.sort();
            faces
        })
    }

    pub fn faces(&self, k: usize) -> Vec<Face> {
        self.face_lattice().iter().filter(|f| f.dim == k).cloned().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension() + 1];
        for face in self.face_lattice() {
            f[face.dim] += 1;
        }
        f
    }

    pub fn face_polytope(&self, face: &Face) -> Polytope {
        let verts = face.vertices.iter().map(|&i| self.vertices[i].clone()).collect();
        Polytope::from_sorted_vertices(self.ambient_dim, verts)
    }

    /// Image under `x ↦ L x + offset`.
    pub fn image(&self, map: &QMatrix, offset: Option<&QVector>) -> Result<Polytope> {
        if map.ncols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.ncols(),
            });
        }
        if let Some(o) = offset {
            if o.len() != map.nrows() {
                return Err(Error::DimensionMismatch {
                    expected: map.nrows(),
                    found: o.len(),
                });
            }
        }
        let pts = self
            .vertices
            .iter()
            .map(|v| {
                let mut y = map.mul_vec(v);
                if let Some(o) = offset {
                    for (yi, oi) in y.iter_mut().zip(o) {
                        *yi += oi;
                    }
                }
                y
            })
            .collect();
        Polytope::from_points(map.nrows(), pts)
    }

    /// Average of the vertices; lies in the relative interior.
    pub fn barycenter(&self) -> QVector {
        let n = Rational::from_integer(self.vertices.len().into());
        let mut c = vec![Rational::zero(); self.ambient_dim];
        for v in &self.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        c.into_iter().map(|x| x / &n).collect()
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Polytope> {
        if !factor.is_positive() {
            return Err(Error::InvalidArgument("dilation factor must be positive".into()));
        }
        let verts = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * factor).collect())
            .collect();
        Ok(Polytope::from_sorted_vertices(self.ambient_dim, verts))
    }

    pub fn dilate(&self, k: u64) -> Result<Polytope> {
        self.scaled(&Rational::from_integer(k.into()))
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        let verts = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
            .collect();
        Polytope::from_sorted_vertices(self.ambient_dim, verts)
    }

    /// `max_{v} w·v`.
    pub fn support(&self, w: &[Rational]) -> Rational {
        self.vertices
            .iter()
            .map(|v| dot_q(w, v))
            .max()
            .expect("polytopes are nonempty")
    }
}

pub fn dilate_h(h: &HPolytope, k: u64) -> Result<HPolytope> {
    if k == 0 {
        return Err(Error::InvalidArgument("dilation factor must be positive".into()));
    }
    let k = Rational::from_integer(k.into());
    Ok(HPolytope {
        ambient_dim: h.ambient_dim,
        inequalities: h.inequalities.iter().map(|(a, b)| (a.clone(), b * &k)).collect(),
        equations: h.equations.iter().map(|(c, d)| (c.clone(), d * &k)).collect(),
    })
}

/// Concatenated constraint system with redundant rows removed by exact LP. An empty
/// intersection is returned unreduced.
pub fn intersect(p: &HPolytope, q: &HPolytope) -> Result<HPolytope> {
    if p.ambient_dim != q.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim,
            found: q.ambient_dim,
        });
    }
    let d = p.ambient_dim;
    let mut ineqs: Vec<(QVector, Rational)> = p.inequalities.iter().chain(&q.inequalities).cloned().collect();
    let all_eqs: Vec<(QVector, Rational)> = p.equations.iter().chain(&q.equations).cloned().collect();
    if !is_feasible(&ineqs, &all_eqs, d) {
        return Ok(HPolytope {
            ambient_dim: d,
            inequalities: ineqs,
            equations: all_eqs,
        });
    }
    let mut eqs: Vec<(QVector, Rational)> = Vec::new();
    let mut eq_rows = Vec::new();
    for (c, e) in all_eqs {
        eq_rows.push(scale_to_integers(&c));
        if rank_int(&eq_rows, d) > eqs.len() {
            eqs.push((c, e));
        } else {
            eq_rows.pop();
        }
    }
    let mut i = 0;
    while i < ineqs.len() {
        let (a, b) = ineqs[i].clone();
        let others: Vec<_> = ineqs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.clone())
            .collect();
        let redundant = match maximize(&a, &others, &eqs) {
            LpOutcome::Optimal { value, .. } => value <= b,
            _ => false,
        };
        if redundant {
            ineqs.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(HPolytope {
        ambient_dim: d,
        inequalities: ineqs,
        equations: eqs,
    })
}

/// `Σ w_i P_i` by incremental pairwise sums, reducing to the hull after each step.
pub fn minkowski_weighted(terms: &[(Rational, &Polytope)]) -> Result<Polytope> {
    let Some(((w0, p0), rest)) = terms.split_first() else {
        return Err(Error::Empty);
    };
    let d = p0.ambient_dim();
    let mut acc = p0.scaled(w0)?;
    for (w, p) in rest {
        if p.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.ambient_dim(),
            });
        }
        let scaled = p.scaled(w)?;
        let mut pts = Vec::with_capacity(acc.vertices().len() * scaled.vertices().len());
        for a in acc.vertices() {
            for b in scaled.vertices() {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        acc = Polytope::from_points(d, pts)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, rat};

    fn q(v: &[i64]) -> QVector {
        v.iter().map(|&x| from_int(x)).collect()
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

    fn cube(d: usize) -> HPolytope {
        let mut ineqs = Vec::new();
        for i in 0..d {
            let mut e = vec![from_int(0); d];
            e[i] = from_int(1);
            ineqs.push((e.clone(), from_int(1)));
            ineqs.push((e.into_iter().map(|x| -x).collect(), from_int(0)));
        }
        HPolytope::new(d, ineqs, vec![]).unwrap()
    }

    #[test]
    fn segment_vertices_as_faces() {
        let s = Polytope::from_points(1, vec![q(&[0]), q(&[1])]).unwrap();
        let f = s.faces(0);
        assert_eq!(f.len(), 2);
        assert_eq!(s.faces(1).len(), 1);
    }

    #[test]
    fn octahedron_face_counts() {
        let o = octahedron();
        assert_eq!(o.faces(0).len(), 6);
        assert_eq!(o.faces(1).len(), 12);
        assert_eq!(o.faces(2).len(), 8);
        assert_eq!(o.f_vector(), vec![6, 12, 8, 1]);
    }

    #[test]
    fn intersect_examples() {
        let c = cube(2);
        let same = intersect(&c, &c).unwrap();
        assert_eq!(same.inequalities.len(), 4);
        let slice = HPolytope::new(3, vec![], vec![(q(&[1, 0, 0]), rat(1, 2))]).unwrap();
        let sq = intersect(&cube(3), &slice).unwrap();
        let p = Polytope::from_h(&sq).unwrap();
        assert_eq!(p.dimension(), 2);
        assert_eq!(p.vertices().len(), 4);
        assert!(p.vertices().iter().all(|v| v[0] == rat(1, 2)));
        assert_eq!(sq.inequalities.len(), 4);
    }

    #[test]
    fn image_examples() {
        let o = octahedron();
        let id = QMatrix::identity(4);
        assert_eq!(o.image(&id, None).unwrap(), o);
        let first = QMatrix::from_ints(&[[1, 0, 0, 0]], 4);
        let seg = o.image(&first, None).unwrap();
        assert_eq!(seg.vertices(), &[q(&[0]), q(&[1])]);
    }

    #[test]
    fn minkowski_examples() {
        let a = Polytope::from_points(1, vec![q(&[0]), q(&[1])]).unwrap();
        let b = Polytope::from_points(1, vec![q(&[0]), q(&[2])]).unwrap();
        let one = from_int(1);
        assert_eq!(minkowski_weighted(&[(one.clone(), &a)]).unwrap(), a);
        let s = minkowski_weighted(&[(one.clone(), &a), (one, &b)]).unwrap();
        assert_eq!(s.vertices(), &[q(&[0]), q(&[3])]);
        let sq = Polytope::from_h(&cube(2)).unwrap();
        let half = rat(1, 2);
        let s = minkowski_weighted(&[(half.clone(), &sq), (half, &sq)]).unwrap();
        assert_eq!(s, sq);
    }

    #[test]
    fn barycenter_and_dilate() {
        let s = Polytope::from_points(1, vec![q(&[0]), q(&[1])]).unwrap();
        assert_eq!(s.barycenter(), vec![rat(1, 2)]);
        assert_eq!(octahedron().barycenter(), vec![rat(1, 2); 4]);
        assert_eq!(s.dilate(3).unwrap().vertices(), &[q(&[0]), q(&[3])]);
        assert_eq!(s.dilate(1).unwrap(), s);
        let p = Polytope::point(q(&[2, 5]));
        assert_eq!(p.barycenter(), q(&[2, 5]));
        let d2 = octahedron().dilate(2).unwrap();
        assert!(d2.vertices().iter().all(|v| v.iter().filter(|x| **x == from_int(2)).count() == 2));
    }
}
