use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{dot, dot_int, primitive, scale_to_integers, IVec, QVector, Rational};

/// Dense rectangular matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    pub fn new(rows: Vec<QVector>, ncols: usize) -> Self {
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "QMatrix rows must all have {ncols} entries"
        );
        Self { rows, ncols }
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R], ncols: usize) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::new(rows, ncols)
    }

    pub fn from_integer_rows(rows: &[IVec], ncols: usize) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        Self::new(rows, ncols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(rows, n)
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self::new(vec![vec![Rational::zero(); ncols]; nrows], ncols)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> QVector {
        assert_eq!(x.len(), self.ncols);
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        QMatrix::new(rows, self.rows.len())
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_integer()))
    }

    /// Each row scaled by a positive factor to clear denominators.
    pub fn integer_rows(&self) -> Vec<IVec> {
        self.rows.iter().map(|r| scale_to_integers(r)).collect()
    }
}

/// Fraction-free (Bareiss) row echelon form. Returns the echelon rows and pivot columns.
fn bareiss(mut a: Vec<IVec>, ncols: usize) -> (Vec<IVec>, Vec<usize>) {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..ncols {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(k, p);
        for i in k + 1..m {
            for j in c + 1..ncols {
                let v = (&a[k][c] * &a[i][j] - &a[i][c] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    (a, pivots)
}

pub fn rank_int(rows: &[IVec], ncols: usize) -> usize {
    bareiss(rows.to_vec(), ncols).1.len()
}

pub fn rank(m: &QMatrix) -> usize {
    rank_int(&m.integer_rows(), m.ncols())
}

/// A particular solution of `A x = b` with free variables set to zero, or `None`
/// when the system is inconsistent.
pub fn solve_affine(a: &QMatrix, b: &[Rational]) -> Option<QVector> {
    assert_eq!(a.nrows(), b.len(), "solve_affine: row count mismatch");
    let n = a.ncols();
    let aug: Vec<IVec> = a
        .rows()
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut row = r.clone();
            row.push(bi.clone());
            scale_to_integers(&row)
        })
        .collect();
    let (ech, pivots) = bareiss(aug, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &p) in pivots.iter().enumerate().rev() {
        let row = &ech[i];
        let mut acc = Rational::from_integer(row[n].clone());
        for j in p + 1..n {
            if !row[j].is_zero() {
                acc -= &x[j] * Rational::from_integer(row[j].clone());
            }
        }
        x[p] = acc / Rational::from_integer(row[p].clone());
    }
    Some(x)
}

/// Row-style Hermite reduction of the first `reduce_cols` columns, applied to whole
/// rows. Returns the rank (number of pivot rows, which come first).
fn hermite_in_place(a: &mut [IVec], reduce_cols: usize) -> usize {
    let m = a.len();
    let mut r = 0;
    for c in 0..reduce_cols {
        if r == m {
            break;
        }
        let mut found = false;
        loop {
            let piv = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = piv else { break };
            found = true;
            a.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(r);
            for (x, y) in head[i].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    r
}

/// Hermite normal form of the row lattice; zero rows are dropped.
pub fn hermite_rows(rows: &[IVec], ncols: usize) -> Vec<IVec> {
    let mut a = rows.to_vec();
    let r = hermite_in_place(&mut a, ncols);
    a.truncate(r);
    a
}

/// Basis of the integer kernel lattice `{x in Z^n : A x = 0}` in Hermite normal form.
/// Every basis vector is primitive.
pub fn kernel_lattice_basis(rows: &[IVec], ncols: usize) -> Vec<IVec> {
    let m = rows.len();
    let mut a: Vec<IVec> = (0..ncols)
        .map(|j| {
            let mut row: IVec = rows.iter().map(|r| r[j].clone()).collect();
            row.extend((0..ncols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let r = hermite_in_place(&mut a, m);
    let kernel: Vec<IVec> = a[r..].iter().map(|row| row[m..].to_vec()).collect();
    hermite_rows(&kernel, ncols)
}

/// Basis of the right kernel. For integral (or row-scaled) matrices this is a basis of
/// the kernel lattice, consisting of primitive integer vectors.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    kernel_lattice_basis(&m.integer_rows(), m.ncols())
        .into_iter()
        .map(|v| v.into_iter().map(Rational::from_integer).collect())
        .collect()
}

/// Integer solution of `A z = b`, if one exists.
pub fn integer_solve(rows: &[IVec], ncols: usize, rhs: &[BigInt]) -> Option<IVec> {
    let m = rows.len();
    assert_eq!(m, rhs.len());
    let mut a: Vec<IVec> = (0..ncols)
        .map(|j| {
            let mut row: IVec = rows.iter().map(|r| r[j].clone()).collect();
            row.extend((0..ncols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let r = hermite_in_place(&mut a, m);
    let mut w: Vec<BigInt> = Vec::with_capacity(r);
    for i in 0..r {
        let p = (0..m).find(|&c| !a[i][c].is_zero()).expect("pivot row is nonzero");
        let mut acc = rhs[p].clone();
        for (ip, wi) in w.iter().enumerate() {
            acc -= &a[ip][p] * wi;
        }
        let (q, rem) = acc.div_rem(&a[i][p]);
        if !rem.is_zero() {
            return None;
        }
        w.push(q);
    }
    let mut z = vec![BigInt::zero(); ncols];
    for (i, wi) in w.iter().enumerate() {
        for (zj, uj) in z.iter_mut().zip(&a[i][m..]) {
            *zj += wi * uj;
        }
    }
    let consistent = rows
        .iter()
        .zip(rhs)
        .all(|(row, b)| row.iter().zip(&z).map(|(x, y)| x * y).sum::<BigInt>() == *b);
    consistent.then_some(z)
}

/// Component of `v` orthogonal to the span of `basis`.
pub fn project_orthogonal(v: &[Rational], basis: &[IVec]) -> QVector {
    if basis.is_empty() {
        return v.to_vec();
    }
    let k = basis.len();
    let gram = QMatrix::new(
        basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| Rational::from_integer(a.iter().zip(b).map(|(x, y)| x * y).sum()))
                    .collect()
            })
            .collect(),
        k,
    );
    let rhs: QVector = basis.iter().map(|b| dot_int(b, v)).collect();
    let c = solve_affine(&gram, &rhs).expect("gram matrix of a basis is invertible");
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        for (o, bj) in out.iter_mut().zip(b) {
            *o -= ci * Rational::from_integer(bj.clone());
        }
    }
    out
}

/// Basepoint (the first point) and a basis of the span of differences, chosen greedily
/// from the differences in input order.
pub fn affine_hull(points: &[QVector]) -> (QVector, Vec<QVector>) {
    assert!(!points.is_empty(), "affine_hull of an empty point set");
    let base = points[0].clone();
    let d = base.len();
    let mut dirs: Vec<QVector> = Vec::new();
    let mut ints: Vec<IVec> = Vec::new();
    for p in &points[1..] {
        let diff: QVector = p.iter().zip(&base).map(|(a, b)| a - b).collect();
        if diff.iter().all(|x| x.is_zero()) {
            continue;
        }
        ints.push(scale_to_integers(&diff));
        if rank_int(&ints, d) > dirs.len() {
            dirs.push(diff);
        } else {
            ints.pop();
        }
        if dirs.len() == d {
            break;
        }
    }
    (base, dirs)
}

/// The affine hull of a point set together with its integer structure: the lattice
/// `direction space ∩ Z^d` (in Hermite normal form) and primitive equation normals.
#[derive(Debug, Clone)]
pub struct AffineFrame {
    pub ambient_dim: usize,
    pub base: QVector,
    /// Lattice basis of the direction space, one row per basis vector.
    pub basis: Vec<IVec>,
    pivots: Vec<usize>,
    /// Integer normals `c` with `c·x = rhs` on the whole affine hull.
    pub equations: Vec<(IVec, Rational)>,
}

impl AffineFrame {
    pub fn new(points: &[QVector]) -> Self {
        assert!(!points.is_empty(), "AffineFrame of an empty point set");
        let d = points[0].len();
        let base = points[0].clone();
        let diffs: Vec<IVec> = points[1..]
            .iter()
            .map(|p| scale_to_integers(&p.iter().zip(&base).map(|(a, b)| a - b).collect::<Vec<_>>()))
            .collect();
        let normals = kernel_lattice_basis(&diffs, d);
        let basis = kernel_lattice_basis(&normals, d);
        let pivots = basis
            .iter()
            .map(|b| b.iter().position(|x| !x.is_zero()).expect("nonzero basis row"))
            .collect();
        let equations = normals
            .into_iter()
            .map(|c| {
                let rhs = dot_int(&c, &base);
                (c, rhs)
            })
            .collect();
        Self {
            ambient_dim: d,
            base,
            basis,
            pivots,
            equations,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Lattice coordinates `y` with `x = base + Σ y_i basis_i`. Assumes `x` lies in the hull.
    pub fn coords(&self, x: &[Rational]) -> QVector {
        let diff: QVector = x.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        let mut y: QVector = Vec::with_capacity(self.dim());
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut acc = diff[p].clone();
            for (ip, yi) in y.iter().enumerate() {
                if !self.basis[ip][p].is_zero() {
                    acc -= yi * Rational::from_integer(self.basis[ip][p].clone());
                }
            }
            y.push(acc / Rational::from_integer(self.basis[i][p].clone()));
        }
        y
    }

    pub fn point(&self, y: &[Rational]) -> QVector {
        let mut x = self.base.clone();
        for (yi, b) in y.iter().zip(&self.basis) {
            for (xj, bj) in x.iter_mut().zip(b) {
                if !bj.is_zero() {
                    *xj += yi * Rational::from_integer(bj.clone());
                }
            }
        }
        x
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(c, rhs)| dot_int(c, x) == *rhs)
    }

    /// The ambient normal in the direction space that restricts to the functional `a`
    /// on lattice coordinates, scaled to a primitive integer vector.
    pub fn lift_functional(&self, a: &[Rational]) -> IVec {
        let k = self.dim();
        let gram = QMatrix::new(
            self.basis
                .iter()
                .map(|u| {
                    self.basis
                        .iter()
                        .map(|v| Rational::from_integer(u.iter().zip(v).map(|(x, y)| x * y).sum()))
                        .collect()
                })
                .collect(),
            k,
        );
        let z = solve_affine(&gram, a).expect("gram matrix of a basis is invertible");
        let mut n = vec![Rational::zero(); self.ambient_dim];
        for (zi, b) in z.iter().zip(&self.basis) {
            for (nj, bj) in n.iter_mut().zip(b) {
                *nj += zi * Rational::from_integer(bj.clone());
            }
        }
        primitive(&scale_to_integers(&n))
    }

    /// Restriction of an ambient functional to lattice coordinates.
    pub fn restrict_functional(&self, n: &[Rational]) -> QVector {
        self.basis.iter().map(|b| dot_int(b, n)).collect()
    }
}

/// Exact determinant of a square rational matrix.
pub fn determinant(rows: &[QVector]) -> Rational {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pivot;
            for j in c..n {
                let v = &f * &a[c][j];
                a[r][j] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{from_int, rat};

    fn ivec(v: &[i64]) -> IVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::identity(2)), 2);
        assert_eq!(rank(&QMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&QMatrix::from_ints(&[[1, 1, 1, 1]], 4)), 1);
        assert_eq!(rank(&QMatrix::from_ints(&[[1, 2], [2, 4], [0, 0]], 2)), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&QMatrix::from_ints(&[[1, 1]], 2)), vec![vec![from_int(1), from_int(-1)]]);
        assert!(kernel_basis(&QMatrix::identity(2)).is_empty());
        let phi = QMatrix::from_ints(
            &[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0]],
            5,
        );
        let k = kernel_basis(&phi);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], [0, 0, 0, 0, 1].map(from_int).to_vec());
    }

    #[test]
    fn kernel_is_saturated() {
        // ker (2, 1, 0) ∩ Z^3 is spanned by (1,-2,0) and (0,0,1).
        let k = kernel_lattice_basis(&[ivec(&[2, 1, 0])], 3);
        assert_eq!(k, vec![ivec(&[1, -2, 0]), ivec(&[0, 0, 1])]);
        // rank 1 lattice (2,2) must give (1,-1)
        let k = kernel_lattice_basis(&[ivec(&[2, 2])], 2);
        assert_eq!(k, vec![ivec(&[1, -1])]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(1, 2), from_int(3)];
        assert_eq!(solve_affine(&QMatrix::identity(2), &b), Some(b.clone()));
        assert_eq!(solve_affine(&QMatrix::zeros(1, 1), &[from_int(1)]), None);
        let sum = QMatrix::from_ints(&[[1, 1, 1, 1]], 4);
        let x = solve_affine(&sum, &[from_int(2)]).unwrap();
        assert_eq!(sum.mul_vec(&x), vec![from_int(2)]);
    }

    #[test]
    fn integer_solve_detects_parity_obstruction() {
        // 2x = 1 has no integer solution; 2x + 3y = 1 does.
        assert!(integer_solve(&[ivec(&[2])], 1, &[BigInt::from(1)]).is_none());
        let z = integer_solve(&[ivec(&[2, 3])], 2, &[BigInt::from(1)]).unwrap();
        assert_eq!(&z[0] * 2 + &z[1] * 3, BigInt::from(1));
    }

    #[test]
    fn determinant_examples() {
        let m = vec![vec![from_int(2), from_int(1)], vec![from_int(1), from_int(3)]];
        assert_eq!(determinant(&m), from_int(5));
        let s = vec![vec![from_int(0), from_int(1)], vec![from_int(1), from_int(0)]];
        assert_eq!(determinant(&s), from_int(-1));
        assert_eq!(determinant(&[]), from_int(1));
    }

    #[test]
    fn affine_hull_dimensions() {
        let (_, dirs) = affine_hull(&[vec![from_int(1), from_int(2)]]);
        assert!(dirs.is_empty());
        let pts: Vec<QVector> = [[1, 1, 0, 0], [1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1]]
            .iter()
            .map(|p| p.map(from_int).to_vec())
            .collect();
        let (base, dirs) = affine_hull(&pts);
        assert_eq!(base, pts[0]);
        assert_eq!(dirs.len(), 3);
    }

    #[test]
    fn frame_coordinates_round_trip() {
        let pts: Vec<QVector> = [[1, 1, 0, 0], [1, 0, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]]
            .iter()
            .map(|p| p.map(from_int).to_vec())
            .collect();
        let f = AffineFrame::new(&pts);
        assert_eq!(f.dim(), 3);
        assert_eq!(f.equations.len(), 1);
        for p in &pts {
            assert_eq!(f.point(&f.coords(p)), *p);
            assert!(f.contains(p));
        }
    }
}
