use ffzeta::ffpoly::{enumerate_squarefree_monic, jacobi_symbol, moebius_mu, monic_from_index, FieldCtx, PolyQ};
use ffzeta::lfunc::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn charsum_and_pointcount_agree_exhaustively() {
    let ctx = FieldCtx::prime(3).unwrap();
    for n in [3usize, 5] {
        for d in enumerate_squarefree_monic(&ctx, n).unwrap() {
            assert_eq!(
                lpoly_charsum(&ctx, &d).unwrap(),
                lpoly_pointcount(&ctx, &d).unwrap(),
                "{d}"
            );
        }
    }
}

#[test]
fn charsum_and_pointcount_agree_on_samples() {
    let ctx = FieldCtx::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut seen = 0;
    while seen < 100 {
        let d = PolyQ::new(&ctx, monic_from_index(5, 5, rng.gen_range(0..5u64.pow(5))));
        match lpoly_charsum(&ctx, &d) {
            Err(LfError::NotSquarefree) => continue,
            r => assert_eq!(r.unwrap(), lpoly_pointcount(&ctx, &d).unwrap()),
        }
        seen += 1;
    }
}

#[test]
fn functional_equation_and_zeros() {
    for (q, n) in [(3u32, 5usize), (3, 7), (5, 5)] {
        let fam = FamilyData::compute(q, n, Method::Auto, 0).unwrap();
        let expected_zeros = 2 * ((n - 1) / 2);
        for i in 0..fam.len() {
            let l = fam.completed(i).unwrap();
            assert_eq!(l.w, Some(1));
            let z = zero_angles(&l, DEFAULT_ZERO_TOL).unwrap();
            assert_eq!(z.angles.len(), expected_zeros);
            assert!(z.tolerance < 1e-9);
            let mut pos: Vec<f64> = z.angles.iter().filter(|t| **t > 0.0).copied().collect();
            let mut neg: Vec<f64> = z.angles.iter().filter(|t| **t < 0.0).map(|t| -t).collect();
            pos.sort_by(f64::total_cmp);
            neg.sort_by(f64::total_cmp);
            // angles ±π and 0 are self-conjugate
            let paired = z.angles.len() - pos.len() - neg.len();
            assert_eq!(paired % 2, 0);
            for (a, b) in pos.iter().zip(&neg) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn even_degree_completion() {
    let fam = FamilyData::compute(3, 4, Method::Auto, 1).unwrap();
    for i in 0..fam.len() {
        let l = fam.completed(i).unwrap();
        assert_eq!(l.c, conductor_degree(4));
        let z = zero_angles(&l, DEFAULT_ZERO_TOL).unwrap();
        assert_eq!(z.angles.len(), l.c);
    }
}

#[test]
fn evaluation_matches_zero_product() {
    let fam = FamilyData::compute(3, 5, Method::Auto, 1).unwrap();
    let q = 3f64;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in (0..fam.len()).step_by(7) {
        let l = fam.completed(i).unwrap();
        let z = zero_angles(&l, DEFAULT_ZERO_TOL).unwrap();
        for _ in 0..20 {
            let s = Complex64::new(0.5 + rng.gen_range(-0.3..0.3), rng.gen_range(-10.0..10.0));
            let u = (-s * q.ln()).exp();
            let x = -((Complex64::new(0.5, 0.0) - s) * q.ln()).exp();
            let by_zeros: Complex64 = z
                .angles
                .iter()
                .map(|&t| 1.0 + x * Complex64::from_polar(1.0, t))
                .product();
            let by_coeffs = l.eval(u);
            assert!(
                (by_zeros - by_coeffs).norm() <= 1e-9 * by_coeffs.norm().max(1.0),
                "{i} {s}"
            );
        }
    }
}

#[test]
fn inverse_series_is_moebius_character_sum() {
    let ctx = FieldCtx::prime(3).unwrap();
    // μ(r) for all monic r of degree ≤ 4, in index order
    let mu: Vec<Vec<(PolyQ, i8)>> = (0..=4usize)
        .map(|deg| {
            (0..3u64.pow(deg as u32))
                .map(|idx| {
                    let r = PolyQ::new(&ctx, monic_from_index(3, deg, idx));
                    let m = moebius_mu(&r).unwrap();
                    (r, m)
                })
                .collect()
        })
        .collect();
    for n in [3usize, 5] {
        let fam = FamilyData::compute(3, n, Method::Auto, 1).unwrap();
        for i in 0..fam.len() {
            let l = fam.lpoly(i);
            let d = l.modulus_poly(&ctx);
            let b = invert_series(&l, 4).unwrap();
            for (deg, rs) in mu.iter().enumerate() {
                let brute: i128 = rs
                    .iter()
                    .filter(|(_, m)| *m != 0)
                    .map(|(r, m)| (*m as i128) * jacobi_symbol(r, &d).unwrap() as i128)
                    .sum();
                assert_eq!(b[deg], brute, "d={d} R={deg}");
            }
        }
    }
}

#[test]
fn cache_round_trip_and_order() {
    let fam = FamilyData::compute(5, 3, Method::Both, 1).unwrap();
    let mut first = Vec::new();
    write_cache(&fam, &mut first).unwrap();
    let back = read_cache(first.as_slice()).unwrap();
    let mut second = Vec::new();
    write_cache(&back, &mut second).unwrap();
    assert_eq!(first, second);
    assert!(fam.indices.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(fam.len(), 100);
}

#[test]
fn family_independent_of_workers() {
    let a = FamilyData::compute(3, 7, Method::Auto, 1).unwrap();
    let b = FamilyData::compute(3, 7, Method::Auto, 3).unwrap();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn digits_round_trip(idx in 0u64..5u64.pow(6)) {
        let d = digits_from_index(5, 6, idx);
        prop_assert_eq!(d.len(), 6);
        prop_assert_eq!(index_from_digits(5, &d), idx);
    }

    #[test]
    fn power_sums_respect_weil_bound(i in 0usize..1458) {
        let fam = family_q3_n7();
        let row = fam.row(i);
        let c = angle_cosine_sums(3, row, 8);
        let zeros = 2 * 3;
        for v in c {
            prop_assert!(v.abs() <= zeros as f64 + 1e-9);
        }
    }
}

fn family_q3_n7() -> &'static FamilyData {
    static FAM: std::sync::OnceLock<FamilyData> = std::sync::OnceLock::new();
    FAM.get_or_init(|| FamilyData::compute(3, 7, Method::Auto, 1).unwrap())
}
