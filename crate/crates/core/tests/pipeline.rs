use fibertope::exact::{from_int, rat, QVector};
use fibertope::fan::FanJson;
use fibertope::fiber::{chamber_complex, fiber_over};
use fibertope::flag::{gt_polytope, gt_string_polytope, hypersimplex, nbar_fan, phi, pi_lambda, standard_word, weight_polytope};

/// Eulerian number `A(m, j)`: permutations of `m` letters with `j` descents.
fn eulerian(m: i64, j: i64) -> i64 {
    (0..=j + 1)
        .map(|i| {
            let binom = (0..i).fold(1i64, |acc, t| acc * (m + 1 - t) / (t + 1));
            (if i % 2 == 0 { 1 } else { -1 }) * binom * (j + 1 - i).pow(m as u32)
        })
        .sum()
}

#[test]
fn hypersimplex_volumes_match_eulerian_numbers() {
    for n in [4usize, 5, 6] {
        let m = (n - 1) as i64;
        let factorial: i64 = (1..=m).product();
        assert_eq!(hypersimplex(n).unwrap().normalized_volume(), rat(eulerian(m, 1), factorial), "n = {n}");
    }
}

#[test]
fn vertex_fibers_are_points() {
    for n in [4usize, 5, 6] {
        let (gt, pi) = (gt_polytope(n).unwrap(), phi(n).unwrap());
        for v in hypersimplex(n).unwrap().vertices() {
            assert_eq!(fiber_over(&gt, &pi, v).unwrap().dimension(), 0, "n = {n}, vertex {v:?}");
        }
    }
}

#[test]
fn four_point_chamber_complex() {
    let cc = chamber_complex(&gt_polytope(4).unwrap(), &phi(4).unwrap()).unwrap();
    assert_eq!(cc.chambers.len(), 8);
    assert_eq!(cc.walls.len(), 11);
    assert_eq!(cc.volume_sum(), rat(2, 3));
}

#[test]
fn four_point_sigma_is_a_segment() {
    let r = nbar_fan(4).unwrap();
    assert_eq!(r.sigma.dimension(), 1);
    assert_eq!(r.sigma.vertices(), &[vec![rat(1, 3)], vec![rat(1, 2)]]);
    assert!(r.agreement);
    let json = serde_json::to_string(&FanJson::from_fan(&r.fan_from_sigma).unwrap()).unwrap();
    let back: FanJson = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_fan().unwrap(), r.fan_from_sigma);
}

#[test]
fn string_polytope_maps_onto_weight_polytope() {
    for lambda in [[2i64, 1, 0], [3, 1, 0]] {
        let s = gt_string_polytope(&lambda).unwrap();
        let pi = pi_lambda(&standard_word(3), &lambda, 3).unwrap();
        let image = s.image(&pi.linear_part(), Some(&pi.offset().to_vec())).unwrap();
        let w = weight_polytope(&lambda, 3).unwrap();
        assert_eq!(image.vertices(), w.vertices(), "lambda = {lambda:?}");
    }
}

#[test]
fn barycenter_fiber_of_octahedron() {
    let (gt, pi) = (gt_polytope(4).unwrap(), phi(4).unwrap());
    let centre: QVector = vec![from_int(1) / from_int(2); 4];
    let f = fiber_over(&gt, &pi, &centre).unwrap();
    assert_eq!(f.dimension(), 1);
}
