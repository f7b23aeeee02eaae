use num_bigint::BigInt;
use num_traits::One;

use super::HPolytope;
use crate::error::{Error, Result};
use crate::exact::{AffineLattice, IVec, Rational};
use crate::lp::{maximize, minimize, LpOutcome};

/// Exact per-coordinate bounds `[min x_j, max x_j]`, or `None` when infeasible.
pub fn coordinate_bounds(h: &HPolytope) -> Result<Option<Vec<(Rational, Rational)>>> {
    let d = h.ambient_dim;
    let mut bounds = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = vec![Rational::from_integer(0.into()); d];
        e[j] = Rational::one();
        let lo = match minimize(&e, &h.inequalities, &h.equations) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        };
        let hi = match maximize(&e, &h.inequalities, &h.equations) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        };
        bounds.push((lo, hi));
    }
    Ok(Some(bounds))
}

/// All points of `lattice` in `h`, canonically sorted. Uses LP bounds and box
/// enumeration with constraint and congruence filtering.
pub fn lattice_points(h: &HPolytope, lattice: &AffineLattice) -> Result<Vec<IVec>> {
    if lattice.ambient_dim() != h.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: h.ambient_dim,
            found: lattice.ambient_dim(),
        });
    }
    let Some(bounds) = coordinate_bounds(h)? else {
        return Ok(Vec::new());
    };
    let ranges: Vec<(BigInt, BigInt)> = bounds
        .iter()
        .map(|(lo, hi)| (lo.ceil().to_integer(), hi.floor().to_integer()))
        .collect();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Ok(Vec::new());
    }
    let d = ranges.len();
    let mut out = Vec::new();
    let mut x: IVec = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    loop {
        if h.contains_int(&x) && lattice.contains(&x) {
            out.push(x.clone());
        }
        // odometer, last coordinate fastest
        let mut j = d;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if x[j] < ranges[j].1 {
                x[j] += 1;
                break;
            }
            x[j] = ranges[j].0.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{from_int, Congruence, QVector};

    fn q(v: &[i64]) -> QVector {
        v.iter().map(|&x| from_int(x)).collect()
    }

    fn unit_square() -> HPolytope {
        HPolytope::new(
            2,
            vec![
                (q(&[1, 0]), from_int(1)),
                (q(&[-1, 0]), from_int(0)),
                (q(&[0, 1]), from_int(1)),
                (q(&[0, -1]), from_int(0)),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn unit_square_has_four_points() {
        let pts = lattice_points(&unit_square(), &AffineLattice::full(2)).unwrap();
        assert_eq!(pts.len(), 4);
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(pts, sorted);
    }

    #[test]
    fn congruence_filter() {
        let even_sum = AffineLattice::new(
            2,
            vec![Congruence {
                coefficients: vec![1, 1],
                modulus: 2,
                residue: 0,
            }],
        )
        .unwrap();
        assert_eq!(lattice_points(&unit_square(), &even_sum).unwrap().len(), 2);
    }

    #[test]
    fn bounds_match_vertices() {
        let b = coordinate_bounds(&unit_square()).unwrap().unwrap();
        assert_eq!(b, vec![(from_int(0), from_int(1)), (from_int(0), from_int(1))]);
    }

    #[test]
    fn unbounded_is_an_error() {
        let h = HPolytope::new(1, vec![(q(&[-1]), from_int(0))], vec![]).unwrap();
        assert_eq!(lattice_points(&h, &AffineLattice::full(1)), Err(Error::Unbounded));
    }
}
