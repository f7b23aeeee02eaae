use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{fiber_over, Projection};
use crate::budget::Budget;
use crate::error::Result;
use crate::exact::{
    dot_int, from_int, kernel_basis, primitive, scale_to_integers, sign_normalized, AffineFrame, IVec,
    QMatrix, QVector, Rational,
};
use crate::polytope::Polytope;

/// An affine hyperplane `normal·x = offset` inside the affine hull of the base polytope.
/// The normal is primitive, lies in the direction space of that hull, and has a
/// positive first nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    pub normal: IVec,
    pub offset: Rational,
}

#[derive(Debug, Clone)]
pub struct Chamber {
    pub polytope: Polytope,
    pub volume: Rational,
    pub barycenter: QVector,
}

/// Subdivision of `Q = π(P)` cut out by the hyperplanes spanned by images of faces of `P`.
#[derive(Debug, Clone)]
pub struct ChamberComplex {
    pub base: Polytope,
    pub chambers: Vec<Chamber>,
    pub walls: Vec<Wall>,
}

impl ChamberComplex {
    pub fn volume_sum(&self) -> Rational {
        self.chambers.iter().fold(Rational::zero(), |acc, c| acc + &c.volume)
    }
}

/// A wall in the lattice coordinates of the base frame: `a·z = b`.
struct LocalWall {
    normal: IVec,
    offset: Rational,
}

fn local_wall(points: &[QVector], k: usize) -> Option<LocalWall> {
    let base = &points[0];
    let diffs: Vec<QVector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let kernel = kernel_basis(&QMatrix::new(diffs, k));
    if kernel.len() != 1 {
        return None;
    }
    let normal = sign_normalized(primitive(&scale_to_integers(&kernel[0])));
    let offset = dot_int(&normal, base);
    Some(LocalWall { normal, offset })
}

fn split(cell: &Polytope, wall: &LocalWall) -> Result<Vec<Polytope>> {
    let values: Vec<Rational> = cell.vertices().iter().map(|v| dot_int(&wall.normal, v)).collect();
    let below = values.iter().any(|v| *v < wall.offset);
    let above = values.iter().any(|v| *v > wall.offset);
    if !(below && above) {
        return Ok(vec![cell.clone()]);
    }
    let h = cell.h_representation();
    let a: QVector = wall.normal.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let neg: QVector = a.iter().map(|x| -x).collect();
    let mut lower = h.clone();
    lower.inequalities.push((a, wall.offset.clone()));
    let mut upper = h;
    upper.inequalities.push((neg, -wall.offset.clone()));
    Ok(vec![Polytope::from_h(&lower)?, Polytope::from_h(&upper)?])
}

fn base_cell(frame: &AffineFrame, base: &Polytope) -> Result<Polytope> {
    let k = frame.dim();
    let coords: Vec<QVector> = base.vertices().iter().map(|v| frame.coords(v)).collect();
    Polytope::from_points(k, coords)
}

pub fn chamber_complex(p: &Polytope, pi: &Projection) -> Result<ChamberComplex> {
    chamber_complex_with_budget(p, pi, &Budget::unlimited())
}

/// Walls are the affine hulls of face images of dimension `dim Q − 1`. Cells are
/// obtained by splitting `Q` along each wall in turn, in canonical wall order.
pub fn chamber_complex_with_budget(p: &Polytope, pi: &Projection, budget: &Budget) -> Result<ChamberComplex> {
    pi.check_source(p)?;
    let image_vertices: Vec<QVector> = p.vertices().iter().map(|v| pi.apply(v)).collect();
    let base = Polytope::from_points(pi.target_dim(), image_vertices.clone())?;
    let frame = base.frame().clone();
    let k = frame.dim();
    let local: Vec<QVector> = image_vertices.iter().map(|v| frame.coords(v)).collect();

    let mut local_walls: BTreeSet<(IVec, Rational)> = BTreeSet::new();
    if k > 0 {
        for face in p.face_lattice() {
            if face.dim + 1 < k {
                continue;
            }
            let pts: Vec<QVector> = face
                .vertices
                .iter()
                .map(|&i| local[i].clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if let Some(w) = local_wall(&pts, k) {
                local_walls.insert((w.normal, w.offset));
            }
        }
    }
    let local_walls: Vec<LocalWall> = local_walls
        .into_iter()
        .map(|(normal, offset)| LocalWall { normal, offset })
        .collect();

    let mut cells = vec![base_cell(&frame, &base)?];
    for (i, wall) in local_walls.iter().enumerate() {
        budget.check("chamber splitting", i, local_walls.len())?;
        let next: Vec<Result<Vec<Polytope>>> = cells.par_iter().map(|c| split(c, wall)).collect();
        cells = next.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    }

    let mut chambers: Vec<Chamber> = cells
        .into_par_iter()
        .map(|cell| {
            let volume = cell.normalized_volume();
            let vertices: Vec<QVector> = cell.vertices().iter().map(|z| frame.point(z)).collect();
            let polytope = Polytope::from_points(base.ambient_dim(), vertices)?;
            let barycenter = polytope.barycenter();
            Ok(Chamber {
                polytope,
                volume,
                barycenter,
            })
        })
        .collect::<Result<_>>()?;
    chambers.sort_by(|a, b| a.polytope.vertices().cmp(b.polytope.vertices()));

    let walls: Vec<Wall> = local_walls
        .iter()
        .map(|w| ambient_wall(&frame, w))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(ChamberComplex { base, chambers, walls })
}

fn ambient_wall(frame: &AffineFrame, w: &LocalWall) -> Wall {
    let a: QVector = w.normal.iter().map(|x| Rational::from_integer(x.clone())).collect();
    let normal = sign_normalized(frame.lift_functional(&a));
    // A point of the wall in local coordinates: offset along the first nonzero axis.
    let i = w.normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let mut z = vec![Rational::zero(); w.normal.len()];
    z[i] = &w.offset / Rational::from_integer(w.normal[i].clone());
    let x = frame.point(&z);
    let offset = dot_int(&normal, &x);
    Wall { normal, offset }
}

/// Chambers whose fiber has a different number of vertices at the barycenter and at a
/// random interior point, as `(chamber index, at barycenter, at random point)`.
pub fn constancy_violations(
    p: &Polytope,
    pi: &Projection,
    complex: &ChamberComplex,
    seed: u64,
) -> Result<Vec<(usize, usize, usize)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<QVector> = complex
        .chambers
        .iter()
        .map(|c| {
            let weights: Vec<Rational> = c
                .polytope
                .vertices()
                .iter()
                .map(|_| from_int(rng.gen_range(1..=64)))
                .collect();
            let total = weights.iter().fold(Rational::zero(), |a, w| a + w);
            let d = c.polytope.ambient_dim();
            let mut x = vec![Rational::zero(); d];
            for (w, v) in weights.iter().zip(c.polytope.vertices()) {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi += w * vi;
                }
            }
            x.into_iter().map(|xi| xi / &total).collect()
        })
        .collect();
    let found: Vec<Option<(usize, usize, usize)>> = complex
        .chambers
        .par_iter()
        .zip(samples.par_iter())
        .enumerate()
        .map(|(i, (c, s))| {
            let at_center = fiber_over(p, pi, &c.barycenter)?.vertices().len();
            let at_sample = fiber_over(p, pi, s)?.vertices().len();
            Ok((at_center != at_sample).then_some((i, at_center, at_sample)))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
