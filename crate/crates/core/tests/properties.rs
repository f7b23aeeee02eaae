use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use fibertope::exact::{
    dot, format_rational, from_int, kernel_lattice_basis, parse_rational, primitive, rank_int, rat, IVec, QVector,
    Rational, Strictness,
};
use fibertope::fan::{normal_fan, normal_fan_ambient};
use fibertope::fiber::{chamber_complex, Projection};
use fibertope::polytope::{lattice_points, minkowski_weighted};
use fibertope::{AffineLattice, HPolytope, Polytope};

fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (usize, Vec<IVec>)> {
    (1..=max_cols, 0..=max_rows).prop_flat_map(|(c, r)| {
        (
            Just(c),
            prop::collection::vec(prop::collection::vec((-4i64..=4).prop_map(BigInt::from), c), r),
        )
    })
}

fn point_set(dim: usize, max_pts: usize) -> impl Strategy<Value = Vec<QVector>> {
    prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(from_int), dim), 1..=max_pts)
}

fn zero_one_points(dim: usize) -> impl Strategy<Value = Vec<QVector>> {
    prop::collection::btree_set(0u32..(1 << dim), 1..=(1usize << dim).min(12)).prop_map(move |s| {
        s.into_iter()
            .map(|m| (0..dim).map(|i| from_int(((m >> i) & 1) as i64)).collect())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity((cols, rows) in int_matrix(5, 6)) {
        let kernel = kernel_lattice_basis(&rows, cols);
        prop_assert_eq!(rank_int(&rows, cols) + kernel.len(), cols);
        for k in &kernel {
            prop_assert_eq!(&primitive(k), k);
            for r in &rows {
                let s: BigInt = r.iter().zip(k).map(|(a, b)| a * b).sum();
                prop_assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn rational_text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x), Strictness::Strict).unwrap(), x);
    }

    #[test]
    fn h_v_round_trip((dim, pts) in (1usize..=5).prop_flat_map(|d| (Just(d), zero_one_points(d)))) {
        let p = Polytope::from_points(dim, pts.clone()).unwrap();
        let again = Polytope::from_h(&p.h_representation()).unwrap();
        prop_assert_eq!(again.vertices(), p.vertices());
        prop_assert!(p.check_consistency());
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
    }

    #[test]
    fn minkowski_support_is_additive(a in point_set(2, 5), b in point_set(2, 5), w in prop::collection::vec(-3i64..=3, 2)) {
        let p = Polytope::from_points(2, a).unwrap();
        let q = Polytope::from_points(2, b).unwrap();
        let s = minkowski_weighted(&[(rat(1, 2), &p), (from_int(2), &q)]).unwrap();
        let w: QVector = w.into_iter().map(from_int).collect();
        prop_assert_eq!(s.support(&w), rat(1, 2) * p.support(&w) + from_int(2) * q.support(&w));
    }

    #[test]
    fn volume_scales_with_dilation(a in point_set(3, 7), k in 1u64..=4) {
        let p = Polytope::from_points(3, a).unwrap();
        let d = p.dimension() as u32;
        let scale = Rational::from_integer(BigInt::from(k).pow(d));
        prop_assert_eq!(p.dilate(k).unwrap().normalized_volume(), p.normalized_volume() * scale);
    }

    #[test]
    fn lattice_counts_grow_with_dilation(a in point_set(2, 5)) {
        let p = Polytope::from_points(2, a).unwrap();
        let full = AffineLattice::full(2);
        let mut last = 0;
        for k in 1..=3 {
            let c = lattice_points(&p.dilate(k).unwrap().h_representation(), &full).unwrap().len();
            prop_assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn normal_fans_complete_and_refine_laws(a in point_set(2, 5), b in point_set(2, 5)) {
        let p = Polytope::from_points(2, a).unwrap();
        let q = Polytope::from_points(2, b).unwrap();
        let (f, g) = (normal_fan_ambient(&p), normal_fan_ambient(&q));
        prop_assert!(f.is_complete() && g.is_complete());
        prop_assert!(normal_fan(&p).is_complete());
        prop_assert_eq!(f.refine(&f).unwrap(), f.clone());
        let fg = f.refine(&g).unwrap();
        prop_assert_eq!(&fg, &g.refine(&f).unwrap());
        prop_assert!(fg.is_complete());
    }

    #[test]
    fn chamber_volumes_sum_to_base(a in point_set(3, 6), row in prop::collection::vec(-2i64..=2, 3)) {
        prop_assume!(row.iter().any(|&x| x != 0));
        let p = Polytope::from_points(3, a).unwrap();
        let pi = Projection::from_ints(3, &[row]).unwrap();
        let cc = chamber_complex(&p, &pi).unwrap();
        prop_assert_eq!(cc.volume_sum(), cc.base.normalized_volume());
    }
}

#[test]
fn membership_matches_description() {
    let h = HPolytope::new(
        2,
        vec![
            (vec![from_int(-1), from_int(0)], Rational::zero()),
            (vec![from_int(0), from_int(-1)], Rational::zero()),
            (vec![from_int(1), from_int(1)], Rational::one()),
        ],
        vec![],
    )
    .unwrap();
    let p = Polytope::from_h(&h).unwrap();
    for f in p.facets() {
        let n: QVector = f.normal.iter().cloned().map(Rational::from_integer).collect();
        for v in p.vertices() {
            assert!(dot(&n, v) <= f.rhs);
        }
    }
}
