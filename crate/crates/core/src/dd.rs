//! Double description method for integer polyhedral cones.
//!
//! Given a cone `{z : g·z >= 0 for g in G, e·z = 0 for e in E}` the routine returns
//! its extreme rays (primitive, modulo the lineality space) together with an integer
//! basis of the lineality space. Constraints are inserted in lexicographic order.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::{kernel_lattice_basis, primitive, IVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<IVec>,
    pub lineality: Vec<IVec>,
}

#[derive(Clone)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_superset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

/// `s*a - t*b`, made primitive.
fn combine(s: &BigInt, a: &[BigInt], t: &BigInt, b: &[BigInt]) -> IVec {
    let v: IVec = a.iter().zip(b).map(|(x, y)| s * x - t * y).collect();
    primitive(&v)
}

pub fn cone_generators(dim: usize, inequalities: &[IVec], equations: &[IVec]) -> ConeGenerators {
    let mut lineality = kernel_lattice_basis(equations, dim);
    let space_dim = lineality.len();
    let mut order: Vec<usize> = (0..inequalities.len()).collect();
    order.sort_by(|&a, &b| inequalities[a].cmp(&inequalities[b]));
    let n = inequalities.len();

    let mut rays: Vec<IVec> = Vec::new();
    let mut zeros: Vec<ZeroSet> = Vec::new();
    let mut inserted = ZeroSet::new(n);

    for (step, &gi) in order.iter().enumerate() {
        let g = &inequalities[gi];
        if g.iter().all(|x| x.is_zero()) {
            inserted.insert(step);
            for z in zeros.iter_mut() {
                z.insert(step);
            }
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !dot(g, l).is_zero()) {
            let mut l0 = lineality.swap_remove(pos);
            let mut s0 = dot(g, &l0);
            if s0.is_negative() {
                l0 = l0.into_iter().map(|x| -x).collect();
                s0 = -s0;
            }
            for l in lineality.iter_mut() {
                let t = dot(g, l);
                if !t.is_zero() {
                    *l = combine(&s0, l, &t, &l0);
                }
            }
            for (r, z) in rays.iter_mut().zip(zeros.iter_mut()) {
                let t = dot(g, r);
                if !t.is_zero() {
                    *r = combine(&s0, r, &t, &l0);
                }
                z.insert(step);
            }
            rays.push(l0);
            zeros.push(inserted.clone());
            inserted.insert(step);
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(g, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, z) in zeros.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    z.insert(step);
                }
            }
            inserted.insert(step);
            continue;
        }
        let pointed_dim = space_dim - lineality.len();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = zeros[p].and(&zeros[q]);
                if common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || !zeros[r].is_superset_of(&common));
                if !adjacent {
                    continue;
                }
                let t = -&vals[q];
                new_rays.push(combine(&vals[p], &rays[q], &(-&t), &rays[p]));
                let mut z = common;
                z.insert(step);
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for i in 0..rays.len() {
            if vals[i].is_negative() {
                continue;
            }
            let mut z = zeros[i].clone();
            if vals[i].is_zero() {
                z.insert(step);
            }
            kept_rays.push(rays[i].clone());
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
        inserted.insert(step);
    }
    rays.sort();
    rays.dedup();
    ConeGenerators { rays, lineality }
}
