mod common;

use common::{big, boxes, brute_signed_sum, leading_coefficient, words};
use fbs_core::crystal::DEFAULT_BUDGET;
use fbs_core::demazure::GenDemazureCrystal;
use fbs_core::twistedcube::{
    histogram_to_csv, mc_estimate, mc_histogram, rational_string, MVPolynomial, ProjectionMap, TwistedCube,
    DEFAULT_SHARDS,
};
use fbs_core::RootSystem;
use num_rational::{BigRational, Rational64};
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// `∫ ρ·g` recovered from the lattice sums of `g` over `C(i, ka)`, where `g`
/// is homogeneous of degree `deg_g`.
fn interpolated(rs: &RootSystem, word: &[usize], a: &[i64], deg_g: usize, g: &dyn Fn(&[i64]) -> BigRational) -> BigRational {
    let deg = word.len() + deg_g;
    let values: Vec<BigRational> = (1..=deg as i64 + 2)
        .map(|k| {
            let ka: Vec<i64> = a.iter().map(|v| v * k).collect();
            brute_signed_sum(rs, word, &ka, g)
        })
        .collect();
    let (lead, residue) = leading_coefficient(&values, deg);
    assert_eq!(residue, big(0), "lattice sums are not polynomial for {word:?} {a:?}");
    lead
}

#[test]
fn rank_one_volume_is_a() {
    let a1 = RootSystem::type_a(1);
    for a in -4..=4 {
        let c = TwistedCube::new(&a1, &[1], &[a]).unwrap();
        assert_eq!(c.signed_volume(), big(a));
    }
    // Lattice points: [−a, 0] has a+1 of them; the open (0, −a) has −a−1, counted negatively.
    assert_eq!(TwistedCube::new(&a1, &[1], &[3]).unwrap().signed_lattice_count(), 4);
    assert_eq!(TwistedCube::new(&a1, &[1], &[-1]).unwrap().signed_lattice_count(), 0);
    assert_eq!(TwistedCube::new(&a1, &[1], &[-3]).unwrap().signed_lattice_count(), -2);
}

#[test]
fn exact_volume_matches_lattice_interpolation() {
    let rs = RootSystem::type_a(2);
    for word in words(2, 3) {
        for a in [vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1], vec![2, 0, 1], vec![1, -1, 2]] {
            let cube = TwistedCube::new(&rs, &word, &a).unwrap();
            let oracle = interpolated(&rs, &word, &a, 0, &|_| big(1));
            assert_eq!(cube.signed_volume(), oracle, "{word:?} {a:?}");
        }
    }
}

#[test]
fn exact_first_moments_match_lattice_interpolation() {
    let rs = RootSystem::type_a(2);
    let word = [1, 2, 1];
    let a = [1, 1, 1];
    let cube = TwistedCube::new(&rs, &word, &a).unwrap();
    let moments = cube.first_moments(&ProjectionMap::identity(3)).unwrap();
    for j in 0..3 {
        let oracle = interpolated(&rs, &word, &a, 1, &|x| big(x[j]));
        assert_eq!(moments[j], oracle, "x_{}", j + 1);
    }
}

#[test]
fn zero_moment_is_the_volume() {
    let rs = RootSystem::type_a(3);
    let cube = TwistedCube::new(&rs, &[1, 2, 3, 1, 2, 1], &[1, 0, 2, 1, 1, 0]).unwrap();
    let l = ProjectionMap::identity(6);
    assert_eq!(cube.pushforward_moment(&l, &[0; 6]).unwrap(), cube.signed_volume());
    assert!(cube.pushforward_moment(&l, &[0; 5]).is_err());
}

#[test]
fn polynomial_integration_by_hand() {
    // ∫_0^1 ∫_0^1 (x + y)^2 = 7/6.
    let p = MVPolynomial::affine(0, &[1, 1]).pow(2);
    let q = p.integrate(0).substitute(0, &MVPolynomial::affine(1, &[0, 0]));
    let r = q.integrate(1).substitute(1, &MVPolynomial::affine(1, &[0, 0]));
    assert_eq!(rational_string(&r.constant_term()), "7/6");
    assert_eq!(rational_string(&big(-3)), "-3");
}

#[test]
fn monte_carlo_agrees_with_exact_values() {
    let rs = RootSystem::type_a(2);
    let cube = TwistedCube::new(&rs, &[1, 2, 1], &[1, 1, 1]).unwrap();
    let l = ProjectionMap::identity(3);
    let exact: Vec<f64> = std::iter::once(cube.signed_volume())
        .chain(cube.first_moments(&l).unwrap())
        .map(|v| v.to_f64().unwrap())
        .collect();
    let ms = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let est = mc_estimate(&cube, &l, &ms, 400_000, 11, DEFAULT_SHARDS).unwrap();
    for j in 0..4 {
        let z = (est.mean[j] - exact[j]) / est.std_error[j].max(1e-12);
        assert!(z.abs() < 5.0, "moment {j}: {} vs {} (z = {z})", est.mean[j], exact[j]);
    }
    let h = mc_histogram(&cube, &l, &[0, 2], 8, 400_000, 11, DEFAULT_SHARDS).unwrap();
    assert!((h.total() - exact[0]).abs() < 5.0 * est.std_error[0]);
    assert_eq!(histogram_to_csv(&h).lines().count(), 65);
}

#[test]
fn bounding_box_contains_support() {
    let rs = RootSystem::type_a(2);
    for word in words(2, 3) {
        for a in boxes(3, 2) {
            let cube = TwistedCube::new(&rs, &word, &a).unwrap();
            let bx = cube.bounding_box();
            for x in boxes(3, 24) {
                // Half-integer grid over [−6, 6]^3.
                let xr: Vec<Rational64> = x.iter().map(|&v| Rational64::new(v - 12, 2)).collect();
                if cube.density(&xr) != 0 {
                    for (v, &(lo, hi)) in xr.iter().zip(&bx) {
                        assert!(Rational64::from(lo) <= *v && *v <= Rational64::from(hi), "{word:?} {a:?} {xr:?} {bx:?}");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_count_is_crystal_size(
        word in prop::collection::vec(1usize..=3, 1..6),
        seed in prop::collection::vec(0i64..3, 6),
    ) {
        let rs = RootSystem::type_a(3);
        let a = &seed[..word.len()];
        let cube = TwistedCube::new(&rs, &word, a).unwrap();
        let c = GenDemazureCrystal::from_word(&rs, &word, a, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(cube.signed_lattice_count(), c.len() as i64);
        prop_assert_eq!(big(cube.signed_lattice_count()), brute_signed_sum(&rs, &word, a, &|_| big(1)));
    }

    #[test]
    fn density_is_consistent(
        word in prop::collection::vec(1usize..=2, 1..5),
        seed in prop::collection::vec(-2i64..3, 5),
        pt in prop::collection::vec(-40i64..40, 5),
    ) {
        let rs = RootSystem::type_a(2);
        let n = word.len();
        let cube = TwistedCube::new(&rs, &word, &seed[..n]).unwrap();
        let xr: Vec<Rational64> = pt[..n].iter().map(|&v| Rational64::new(v, 4)).collect();
        let xf: Vec<f64> = pt[..n].iter().map(|&v| v as f64 / 4.0).collect();
        prop_assert_eq!(cube.density(&xr), cube.density_f64(&xf));
    }
}
