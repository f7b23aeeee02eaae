use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Face, Polytope};
use crate::exact::{determinant, QVector, Rational};

impl Polytope {
    /// Volume relative to the lattice `aff(P)` direction space ∩ Z^d, whose fundamental
    /// cell has volume 1. A point has volume 1.
    ///
    /// Computed from the pulling triangulation that always pulls the first vertex
    /// (in canonical order) of the current face.
    pub fn normalized_volume(&self) -> Rational {
        let k = self.dimension();
        if k == 0 {
            return Rational::one();
        }
        let frame = self.frame();
        let coords: Vec<QVector> = self.vertices.iter().map(|v| frame.coords(v)).collect();
        let mut total = Rational::from_integer(0.into());
        for simplex in self.pulling_triangulation() {
            let rows: Vec<QVector> = simplex[1..]
                .iter()
                .map(|&i| coords[i].iter().zip(&coords[simplex[0]]).map(|(a, b)| a - b).collect())
                .collect();
            total += determinant(&rows).abs();
        }
        let factorial: BigInt = (1..=k).map(BigInt::from).product();
        total / Rational::from_integer(factorial)
    }

    /// Maximal simplices of the pulling triangulation, as sorted vertex index lists.
    pub fn pulling_triangulation(&self) -> Vec<Vec<usize>> {
        let k = self.dimension();
        let faces = self.face_lattice();
        let mut by_dim: Vec<Vec<&Face>> = vec![Vec::new(); k + 1];
        for f in faces {
            by_dim[f.dim].push(f);
        }
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut out: Vec<Vec<usize>> = pull(&all, k, &by_dim)
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        out.sort();
        out
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn pull(face: &[usize], dim: usize, by_dim: &[Vec<&Face>]) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut out = Vec::new();
    for g in &by_dim[dim - 1] {
        if g.vertices.binary_search(&apex).is_ok() || !is_subset(&g.vertices, face) {
            continue;
        }
        for mut s in pull(&g.vertices, dim - 1, by_dim) {
            s.push(apex);
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, rat};

    fn q(v: &[i64]) -> QVector {
        v.iter().map(|&x| from_int(x)).collect()
    }

    #[test]
    fn unit_segment_and_square() {
        let s = Polytope::from_points(1, vec![q(&[0]), q(&[1])]).unwrap();
        assert_eq!(s.normalized_volume(), from_int(1));
        let sq = Polytope::from_points(2, vec![q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])]).unwrap();
        assert_eq!(sq.normalized_volume(), from_int(1));
        assert_eq!(sq.pulling_triangulation().len(), 2);
    }

    #[test]
    fn point_volume_is_one() {
        assert_eq!(Polytope::point(q(&[3, 4])).normalized_volume(), from_int(1));
    }

    #[test]
    fn induced_lattice_volume() {
        // Segment from (0,0) to (2,2): lattice length 2 regardless of Euclidean length.
        let s = Polytope::from_points(2, vec![q(&[0, 0]), q(&[2, 2])]).unwrap();
        assert_eq!(s.normalized_volume(), from_int(2));
        // Triangle conv{0, e1, e2}: 1/2.
        let t = Polytope::from_points(2, vec![q(&[0, 0]), q(&[1, 0]), q(&[0, 1])]).unwrap();
        assert_eq!(t.normalized_volume(), rat(1, 2));
    }

    #[test]
    fn cube_triangulation() {
        let mut pts = Vec::new();
        for m in 0..8i64 {
            pts.push(q(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]));
        }
        let c = Polytope::from_points(3, pts).unwrap();
        assert_eq!(c.normalized_volume(), from_int(1));
        assert_eq!(c.dilate(2).unwrap().normalized_volume(), from_int(8));
    }
}
