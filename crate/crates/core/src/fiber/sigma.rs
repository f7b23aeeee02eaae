use rayon::prelude::*;

use super::chambers::{chamber_complex_with_budget, ChamberComplex};
use super::{fiber_over, Projection};
use crate::budget::Budget;
use crate::error::Result;
use crate::fan::{normal_fan_ambient, Fan};
use crate::polytope::{minkowski_weighted, Polytope};

/// The fiber polytope of a projection together with both descriptions of its normal fan.
#[derive(Debug, Clone)]
pub struct FiberPolytopeResult {
    /// `Σ vol(c) · fiber(barycenter(c))`, in kernel coordinates and not normalized.
    pub sigma: Polytope,
    pub fan_from_sigma: Fan,
    pub fan_from_refinement: Fan,
    pub agreement: bool,
    pub complex: ChamberComplex,
    pub source_dim: usize,
    pub base_dim: usize,
}

impl FiberPolytopeResult {
    pub fn sigma_dim(&self) -> usize {
        self.sigma.dimension()
    }

    /// `dim P − dim π(P)`.
    pub fn expected_dim(&self) -> usize {
        self.source_dim - self.base_dim
    }

    pub fn chamber_count(&self) -> usize {
        self.complex.chambers.len()
    }
}

fn chamber_fibers(p: &Polytope, pi: &Projection, complex: &ChamberComplex, budget: &Budget) -> Result<Vec<Polytope>> {
    let total = complex.chambers.len();
    complex
        .chambers
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            budget.check("chamber fibers", i, total)?;
            fiber_over(p, pi, &c.barycenter)
        })
        .collect()
}

fn refine_fiber_fans(pi: &Projection, fibers: &[Polytope], budget: &Budget) -> Result<Fan> {
    let fans: Vec<Fan> = fibers.par_iter().map(normal_fan_ambient).collect();
    budget.check("fan refinement", 0, 1)?;
    Fan::refine_all(pi.kernel_dim(), &fans)
}

/// Common refinement of the normal fans of the fibers over the chamber barycenters,
/// all taken in kernel coordinates (lower-dimensional fibers carry lineality).
pub fn refined_fiber_fan(p: &Polytope, pi: &Projection) -> Result<Fan> {
    let budget = Budget::unlimited();
    let complex = chamber_complex_with_budget(p, pi, &budget)?;
    let fibers = chamber_fibers(p, pi, &complex, &budget)?;
    refine_fiber_fans(pi, &fibers, &budget)
}

pub fn fiber_polytope(p: &Polytope, pi: &Projection) -> Result<FiberPolytopeResult> {
    fiber_polytope_with_budget(p, pi, &Budget::unlimited())
}

pub fn fiber_polytope_with_budget(p: &Polytope, pi: &Projection, budget: &Budget) -> Result<FiberPolytopeResult> {
    let complex = chamber_complex_with_budget(p, pi, budget)?;
    let fibers = chamber_fibers(p, pi, &complex, budget)?;
    let terms: Vec<_> = complex
        .chambers
        .iter()
        .zip(&fibers)
        .map(|(c, f)| (c.volume.clone(), f))
        .collect();
    budget.check("minkowski sum", 0, 1)?;
    let sigma = minkowski_weighted(&terms)?;
    let fan_from_sigma = normal_fan_ambient(&sigma);
    let fan_from_refinement = refine_fiber_fans(pi, &fibers, budget)?;
    let agreement = fan_from_sigma == fan_from_refinement;
    Ok(FiberPolytopeResult {
        sigma,
        fan_from_sigma,
        fan_from_refinement,
        agreement,
        source_dim: p.dimension(),
        base_dim: complex.base.dimension(),
        complex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, QVector};

    fn q(v: &[i64]) -> QVector {
        v.iter().map(|&x| from_int(x)).collect()
    }

    fn square() -> Polytope {
        Polytope::from_points(2, vec![q(&[0, 0]), q(&[1, 0]), q(&[0, 1]), q(&[1, 1])]).unwrap()
    }

    #[test]
    fn square_over_a_coordinate_gives_its_fiber() {
        let pi = Projection::from_ints(2, &[[1, 0]]).unwrap();
        let r = fiber_polytope(&square(), &pi).unwrap();
        assert_eq!(r.sigma.vertices(), &[q(&[0]), q(&[1])]);
        assert!(r.agreement);
        assert_eq!(r.sigma_dim(), r.expected_dim());
        assert_eq!(r.fan_from_sigma.rays().len(), 2);
    }

    #[test]
    fn identity_gives_a_point_and_the_trivial_fan() {
        let r = fiber_polytope(&square(), &Projection::identity(2)).unwrap();
        assert_eq!(r.sigma.vertices().len(), 1);
        assert_eq!(r.fan_from_sigma, Fan::trivial(0));
        assert!(r.agreement);
    }

    #[test]
    fn triangle_sums_two_chambers() {
        let t = Polytope::from_points(2, vec![q(&[0, 0]), q(&[2, 0]), q(&[1, 1])]).unwrap();
        let pi = Projection::from_ints(2, &[[1, 0]]).unwrap();
        let r = fiber_polytope(&t, &pi).unwrap();
        assert_eq!(r.chamber_count(), 2);
        assert_eq!(r.sigma_dim(), 1);
        assert!(r.agreement);
    }
}
