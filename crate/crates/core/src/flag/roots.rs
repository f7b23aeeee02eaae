use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{from_int, IVec, QVector, Rational};
use crate::fiber::Projection;
use crate::polytope::{HPolytope, Polytope};

/// Root data of `GL_n`: simple roots `e_i - e_{i+1}`, the symmetric group acting by
/// permuting coordinates, and its longest element (reversal).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootDataA {
    pub n: usize,
}

impl RootDataA {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// `α_i` for `i = 1..n-1`.
    pub fn simple_root(&self, i: usize) -> IVec {
        let mut a = vec![BigInt::zero(); self.n];
        a[i - 1] = BigInt::from(1);
        a[i] = BigInt::from(-1);
        a
    }

    pub fn simple_roots(&self) -> Vec<IVec> {
        (1..self.n).map(|i| self.simple_root(i)).collect()
    }

    /// `w0` as a permutation in one-line notation (0-based): `i ↦ n-1-i`.
    pub fn longest_element(&self) -> Vec<usize> {
        (0..self.n).rev().collect()
    }

    pub fn longest_length(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// `(w·x)_{w(i)} = x_i`.
    pub fn act(&self, w: &[usize], x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; x.len()];
        for (i, &wi) in w.iter().enumerate() {
            out[wi] = x[i];
        }
        out
    }

    /// `λ* = -w0·λ`.
    pub fn dual_weight(&self, lambda: &[i64]) -> Vec<i64> {
        self.act(&self.longest_element(), lambda).into_iter().map(|x| -x).collect()
    }

    /// Distinct permutations of `x`.
    pub fn orbit(&self, x: &[i64]) -> Vec<Vec<i64>> {
        let mut v = x.to_vec();
        v.sort_unstable();
        let mut out = vec![v.clone()];
        while next_permutation(&mut v) {
            out.push(v.clone());
        }
        out
    }

    /// Multiplies out `s_{i_1} ⋯ s_{i_l}` (1-based letters) and checks that the word is a
    /// reduced expression of `w0`.
    pub fn check_reduced_word_for_w0(&self, word: &[usize]) -> Result<()> {
        let n = self.n;
        if let Some(bad) = word.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::NotReduced(format!("letter {bad} is not in 1..{}", n - 1)));
        }
        if word.len() != self.longest_length() {
            return Err(Error::NotReduced(format!(
                "length {} differs from the length {} of the longest element",
                word.len(),
                self.longest_length()
            )));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for &i in word {
            perm.swap(i - 1, i);
        }
        if perm != self.longest_element() {
            return Err(Error::NotReduced(format!("product is {perm:?}, not the reversal")));
        }
        Ok(())
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_length(lambda: &[i64], n: usize) -> Result<()> {
    if lambda.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lambda.len(),
        });
    }
    Ok(())
}

fn check_dominant(lambda: &[i64]) -> Result<()> {
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonDominant(format!("{lambda:?} is not weakly decreasing")));
    }
    Ok(())
}

fn qv(v: &[i64]) -> QVector {
    v.iter().map(|&x| from_int(x)).collect()
}

/// `conv(W·λ*)` with `λ* = -w0·λ`.
pub fn weight_polytope(lambda: &[i64], n: usize) -> Result<Polytope> {
    check_length(lambda, n)?;
    let roots = RootDataA::new(n);
    let points = roots.orbit(&roots.dual_weight(lambda)).iter().map(|v| qv(v)).collect();
    Polytope::from_points(n, points)
}

/// `t ↦ -λ + Σ t_j α_{i_j}` for a reduced word of `w0`.
pub fn pi_lambda(word: &[usize], lambda: &[i64], n: usize) -> Result<Projection> {
    check_length(lambda, n)?;
    let roots = RootDataA::new(n);
    roots.check_reduced_word_for_w0(word)?;
    let cols: Vec<IVec> = word.iter().map(|&i| roots.simple_root(i)).collect();
    let rows = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let offset: QVector = lambda.iter().map(|&x| from_int(-x)).collect();
    Projection::new(word.len(), rows, Some(offset))
}

/// `(1)(2 1)(3 2 1)⋯(n-1 ⋯ 1)`.
pub fn standard_word(n: usize) -> Vec<usize> {
    (1..n).flat_map(|m| (1..=m).rev()).collect()
}

/// Offset of row `j` (`1 <= j <= n-1`) in the flattened pattern, rows stored from
/// `n-1` down to `1`.
fn row_offset(n: usize, j: usize) -> usize {
    (j + 1..n).sum()
}

/// Interlacing patterns `λ^{(j)}_i >= λ^{(j-1)}_i >= λ^{(j)}_{i+1}` below the fixed top
/// row `λ^{(n)} = λ`, in coordinates `λ^{(n-1)}, …, λ^{(1)}` flattened row by row.
pub fn gt_pattern_polytope_h(lambda: &[i64]) -> Result<HPolytope> {
    check_dominant(lambda)?;
    let n = lambda.len();
    let d = n * (n - 1) / 2;
    let mut ineqs = Vec::new();
    // Each entry is a coordinate index or a constant from the top row.
    enum Entry {
        Var(usize),
        Const(i64),
    }
    let entry = |j: usize, i: usize| {
        if j == n {
            Entry::Const(lambda[i])
        } else {
            Entry::Var(row_offset(n, j) + i)
        }
    };
    // upper - lower >= 0  as  lower - upper <= 0.
    let mut push = |upper: Entry, lower: Entry| {
        let mut a = vec![Rational::zero(); d];
        let mut b = Rational::zero();
        match lower {
            Entry::Var(k) => a[k] += from_int(1),
            Entry::Const(c) => b -= from_int(c),
        }
        match upper {
            Entry::Var(k) => a[k] -= from_int(1),
            Entry::Const(c) => b += from_int(c),
        }
        ineqs.push((a, b));
    };
    for j in 2..=n {
        for i in 0..j - 1 {
            push(entry(j, i), entry(j - 1, i));
            push(entry(j - 1, i), entry(j, i + 1));
        }
    }
    HPolytope::new(d, ineqs, vec![])
}

pub fn gt_pattern_polytope(lambda: &[i64]) -> Result<Polytope> {
    Polytope::from_h(&gt_pattern_polytope_h(lambda)?)
}

/// The unimodular change of coordinates from patterns to string parameters of
/// [`standard_word`]: in block `m`, the letter `k` gets
/// `t = Σ_{i<=k} (λ^{(m+1)}_i - λ^{(m)}_i)`.
pub fn pattern_to_string(lambda: &[i64], pattern: &[Rational]) -> QVector {
    let n = lambda.len();
    let row = |j: usize, i: usize| -> Rational {
        if j == n {
            from_int(lambda[i])
        } else {
            pattern[row_offset(n, j) + i].clone()
        }
    };
    let mut t = Vec::with_capacity(n * (n - 1) / 2);
    for m in 1..n {
        for k in (1..=m).rev() {
            let s = (0..k).fold(Rational::zero(), |acc, i| acc + row(m + 1, i) - row(m, i));
            t.push(s);
        }
    }
    t
}

/// Image of the pattern polytope in the string coordinates of [`standard_word`]; its
/// image under [`pi_lambda`] is the weight polytope.
pub fn gt_string_polytope(lambda: &[i64]) -> Result<Polytope> {
    let patterns = gt_pattern_polytope(lambda)?;
    let n = lambda.len();
    let points = patterns.vertices().iter().map(|v| pattern_to_string(lambda, v)).collect();
    Polytope::from_points(n * (n - 1) / 2, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::AffineLattice;
    use crate::polytope::lattice_points;

    #[test]
    fn root_data() {
        let r = RootDataA::new(4);
        for a in r.simple_roots() {
            assert_eq!(a.iter().sum::<BigInt>(), BigInt::zero());
        }
        let w0 = r.longest_element();
        assert_eq!(r.act(&w0, &r.act(&w0, &[5, 3, 2, 0])), vec![5, 3, 2, 0]);
        assert_eq!(r.dual_weight(&[1, 1, 0, 0]), vec![0, 0, -1, -1]);
        assert_eq!(r.orbit(&[1, 1, 0, 0]).len(), 6);
    }

    #[test]
    fn reduced_words() {
        let r = RootDataA::new(3);
        assert!(r.check_reduced_word_for_w0(&[1, 2, 1]).is_ok());
        assert!(r.check_reduced_word_for_w0(&[2, 1, 2]).is_ok());
        assert!(matches!(r.check_reduced_word_for_w0(&[1, 1, 2]), Err(Error::NotReduced(_))));
        assert!(matches!(r.check_reduced_word_for_w0(&[1, 2]), Err(Error::NotReduced(_))));
        assert!(matches!(r.check_reduced_word_for_w0(&[1, 3, 1]), Err(Error::NotReduced(_))));
        for n in 2..=6 {
            assert!(RootDataA::new(n).check_reduced_word_for_w0(&standard_word(n)).is_ok());
        }
    }

    #[test]
    fn pi_lambda_rank_one() {
        let p = pi_lambda(&[1], &[1, 0], 2).unwrap();
        assert_eq!(p.apply(&[from_int(0)]), qv(&[-1, 0]));
        assert_eq!(p.apply(&[from_int(1)]), qv(&[0, -1]));
        let seg = Polytope::from_points(1, vec![qv(&[0]), qv(&[1])]).unwrap();
        let img = seg.image(&p.linear_part(), Some(&p.offset().to_vec())).unwrap();
        assert_eq!(img.vertices(), weight_polytope(&[1, 0], 2).unwrap().vertices());
        assert!(!pi_lambda(&[1, 2, 1], &[0, 0, 0], 3).unwrap().has_offset());
    }

    #[test]
    fn weight_polytopes() {
        assert_eq!(weight_polytope(&[1, 0, 0, 0], 4).unwrap().vertices().len(), 4);
        assert_eq!(weight_polytope(&[0, 0, 0], 3).unwrap().vertices().len(), 1);
    }

    #[test]
    fn pattern_counts() {
        let count = |l: &[i64]| {
            let h = gt_pattern_polytope_h(l).unwrap();
            lattice_points(&h, &AffineLattice::full(h.ambient_dim)).unwrap().len()
        };
        assert_eq!(count(&[1, 0]), 2);
        assert_eq!(count(&[1, 1, 0, 0]), 6);
        assert_eq!(count(&[2, 2, 0, 0]), 20);
        assert!(matches!(gt_pattern_polytope_h(&[0, 1]), Err(Error::NonDominant(_))));
    }

    #[test]
    fn string_image_is_weight_polytope() {
        for lambda in [vec![1, 0], vec![2, 1, 0], vec![1, 1, 0, 0], vec![3, 1, 0]] {
            let n = lambda.len();
            let q = gt_string_polytope(&lambda).unwrap();
            let p = pi_lambda(&standard_word(n), &lambda, n).unwrap();
            let img = q.image(&p.linear_part(), Some(&p.offset().to_vec())).unwrap();
            assert_eq!(img.vertices(), weight_polytope(&lambda, n).unwrap().vertices(), "{lambda:?}");
        }
    }
}
