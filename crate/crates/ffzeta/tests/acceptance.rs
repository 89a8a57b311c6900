//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use ffzeta::ffpoly::{
    enumerate_squarefree_monic, euler_criterion, jacobi_symbol, moebius_mu, monic_from_index, FieldCtx, PolyQ,
};
use ffzeta::lfunc::{
    check_functional_equation, complete, invert_series, lpoly_charsum, lpoly_pointcount, zero_angles, FamilyData,
    LPolynomial, Method, DEFAULT_ZERO_TOL,
};
use ffzeta::stats::{
    moebius_cancellation, one_level_density, ratio_average_empirical, recipe_main_term, CoefficientSource,
    ConstantsLedger, Normalization, RatioSpec, TestKernel,
};
use ffzeta::symchar::{
    check_multiplicity_bound, check_reconstruction, decompose_sym_truncated, decompose_wedge_oracle,
    near_zero_lemma_holds, skew_multiplicity, Group, LaurentPoly, Partition,
};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold at desk scale; see README.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    8,
    "with T = n - 1 scaling the finite-n symplectic value at lambda = 1 is 1 - (2/T) sum_{even m<T} g(m/T), \
     a deviation of 1/8 at n = 9 before any finite-q effect",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn family(q: u32, n: usize) -> &'static FamilyData {
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<(u32, usize), &'static FamilyData>>> = OnceLock::new();
    let mut guard = CACHE.get_or_init(Default::default).lock().unwrap();
    guard
        .entry((q, n))
        .or_insert_with(|| Box::leak(Box::new(FamilyData::compute(q, n, Method::PointCount, 0).unwrap())))
}

/// Members checked by the cross-algorithm and functional-equation criteria.
fn checked_members() -> Vec<(u32, usize, PolyQ)> {
    let mut out = Vec::new();
    for n in [3usize, 5, 7] {
        let ctx = FieldCtx::prime(3).unwrap();
        out.extend(enumerate_squarefree_monic(&ctx, n).unwrap().map(|d| (3, n, d)));
    }
    let ctx = FieldCtx::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [5usize, 7] {
        let mut taken = 0;
        while taken < 500 {
            let d = PolyQ::new(&ctx, monic_from_index(5, n, rng.gen_range(0..5u64.pow(n as u32))));
            if ffzeta::ffpoly::is_squarefree(&d).unwrap() {
                out.push((5, n, d));
                taken += 1;
            }
        }
    }
    out
}

fn pointcount_results() -> &'static Vec<LPolynomial> {
    static CACHE: OnceLock<Vec<LPolynomial>> = OnceLock::new();
    CACHE.get_or_init(|| {
        checked_members()
            .iter()
            .map(|(q, _, d)| lpoly_pointcount(&FieldCtx::prime(*q).unwrap(), d).unwrap())
            .collect()
    })
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for q in [3u32, 5, 7] {
        let ctx = FieldCtx::prime(q).unwrap();
        for n in 2..=8usize {
            let count = enumerate_squarefree_monic(&ctx, n).unwrap().count() as u64;
            if count != (q as u64).pow(n as u32) - (q as u64).pow(n as u32 - 1) {
                bad.push(format!("q={q} n={n} count={count}"));
            }
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 10.0,
        format!("21 families, {secs:.2} s {}", bad.join(" ")),
    )
}

fn criterion_2() -> Outcome {
    let t0 = Instant::now();
    let members = checked_members();
    let pc = pointcount_results();
    let mut mismatches = 0;
    for ((q, _, d), p) in members.iter().zip(pc) {
        if lpoly_charsum(&FieldCtx::prime(*q).unwrap(), d).unwrap() != *p {
            mismatches += 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 120.0,
        format!("{} members, {mismatches} mismatches, {secs:.1} s", members.len()),
    )
}

fn criterion_3() -> Outcome {
    let members = checked_members();
    let mut worst = 0.0f64;
    let mut bad = 0;
    for ((_, n, _), l) in members.iter().zip(pointcount_results()) {
        let mut full = complete(l).unwrap();
        let w = check_functional_equation(&mut full);
        let z = zero_angles(&full, DEFAULT_ZERO_TOL);
        match z {
            Ok(z) if w == Ok(1) && z.angles.len() == 2 * ((n - 1) / 2) => worst = worst.max(z.tolerance),
            _ => bad += 1,
        }
    }
    outcome(
        bad == 0 && worst < 1e-9,
        format!(
            "{} members, max modulus error {worst:.2e}, {bad} failures",
            members.len()
        ),
    )
}

fn criterion_4() -> Outcome {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    for k in 1..=2usize {
        for m in 1..=3usize {
            let oracle = decompose_wedge_oracle(k, m, 64).unwrap();
            for rho in Partition::all_in_box(m, k as u32) {
                let closed = skew_multiplicity(Group::Sp, &rho, k, 2 * m as u32, 0).unwrap();
                if Some(&closed) != oracle.get(&rho) && !(closed.is_zero() && !oracle.contains_key(&rho)) {
                    bad.push(format!("K={k} m={m} rho={rho}"));
                }
                count += 1;
            }
        }
    }
    let p = |v: Vec<u32>| Partition::new(v).unwrap();
    let poly = |t: &[(&[i32], i64)]| LaurentPoly::from_terms(1, t);
    let expected = [
        (p(vec![]), poly(&[(&[0], 1), (&[2], 1), (&[4], 1)])),
        (p(vec![1]), poly(&[(&[1], 1), (&[3], 1)])),
        (p(vec![1, 1]), poly(&[(&[2], 1)])),
    ];
    for (rho, want) in &expected {
        if skew_multiplicity(Group::Sp, rho, 1, 4, 0).unwrap() != *want {
            bad.push(format!("c=4 rho={rho}"));
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        bad.is_empty() && secs < 30.0,
        format!("{count} multiplicities + c=4 table, {secs:.2} s {}", bad.join(" ")),
    )
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for k in 0..=2usize {
        for size in 0..=4u32 {
            for rho in Partition::all_of_size(size) {
                let l = rho.len() as u32;
                if !check_reconstruction(Group::Sp, &rho, k, 0, &[2 * l + 2, 2 * l + 4, 2 * l + 6]).unwrap() {
                    bad.push(format!("K={k} rho={rho}"));
                }
                count += 1;
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{count} (K, rho) pairs at three c each {}", bad.join(" ")),
    )
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for total in 0..=5u32 {
        for k in 0..=total {
            let t = ConstantsLedger::quadratic(k, total - k);
            let delta = BigRational::new(1.into(), (576u32.max(2016 * total)).into());
            if t.delta != delta || t.omega != BigRational::new(1.into(), 84.into()) {
                bad.push(format!("K={k} Q={}", total - k));
            }
        }
    }
    outcome(bad.is_empty(), format!("21 (K, Q) pairs {}", bad.join(" ")))
}

fn criterion_7() -> Outcome {
    let t0 = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for q in [3u32, 5] {
        if moebius_cancellation(family(q, 5), 0).unwrap() != 1.0 {
            pass = false;
            parts.push(format!("q={q} R=0 not 1"));
        }
        for r in 1..=3usize {
            let v5 = moebius_cancellation(family(q, 5), r).unwrap().abs();
            let v9 = moebius_cancellation(family(q, 9), r).unwrap().abs();
            // an exact zero at both sizes is already the limit
            let ok = (v9 < v5 || (v5 == 0.0 && v9 == 0.0)) && v9 < 0.1;
            pass &= ok;
            parts.push(format!("q={q} R={r}: {v5:.3e} -> {v9:.3e}"));
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    outcome(pass && secs < 300.0, format!("{}; {secs:.1} s", parts.join(", ")))
}

fn criterion_8() -> Outcome {
    let t0 = Instant::now();
    let mut pass = true;
    for lambda in [0.1, 0.25, 0.5, 0.75, 1.0] {
        pass &= TestKernel::triangle(lambda).unwrap().reference() == 1.0 - lambda / 2.0;
    }
    let kernel = TestKernel::triangle(1.0).unwrap();
    let devs: Vec<f64> = [5usize, 7, 9]
        .iter()
        .map(|&n| {
            let (emp, reference) = one_level_density(family(5, n), &kernel).unwrap();
            (emp - reference).abs()
        })
        .collect();
    let decreasing = devs.windows(2).all(|w| w[1] <= w[0]);
    let small = devs[2] < 0.1;
    let secs = t0.elapsed().as_secs_f64();
    outcome(
        pass && decreasing && small && secs < 600.0,
        format!(
            "references exact: {pass}; deviations n=5,7,9: {:.4}, {:.4}, {:.4} (decreasing: {decreasing}, final < 0.1: {small}); {secs:.1} s",
            devs[0], devs[1], devs[2]
        ),
    )
}

fn criterion_9() -> Outcome {
    let ns = [5usize, 7, 9];
    let single = RatioSpec::uniform(0, 1, 0.8);
    let d1: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let v = ratio_average_empirical(family(3, n), &single, Normalization::Normalized, 1e-12).unwrap();
            (v - Complex64::new(2.0 / 3.0, 0.0)).norm()
        })
        .collect();
    let numer = RatioSpec::uniform(1, 0, 0.55);
    let d2: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let v = ratio_average_empirical(family(3, n), &numer, Normalization::Normalized, 1e-12).unwrap();
            let mt = recipe_main_term(3, n, &numer, CoefficientSource::Model, 4 * n)
                .unwrap()
                .mt;
            (v - mt).norm()
        })
        .collect();
    let dec = |d: &[f64]| d.windows(2).all(|w| w[1] < w[0]);
    outcome(
        dec(&d1) && dec(&d2),
        format!(
            "(0,1) s=0.8: {:.2e} {:.2e} {:.2e}; (1,0) s=0.55: {:.2e} {:.2e} {:.2e}",
            d1[0], d1[1], d1[2], d2[0], d2[1], d2[2]
        ),
    )
}

fn criterion_10() -> Outcome {
    let ctx = FieldCtx::prime(3).unwrap();
    let rs: Vec<Vec<(PolyQ, i8)>> = (0..=4usize)
        .map(|deg| {
            (0..3u64.pow(deg as u32))
                .map(|idx| PolyQ::new(&ctx, monic_from_index(3, deg, idx)))
                .map(|r| {
                    let mu = moebius_mu(&r).unwrap();
                    (r, mu)
                })
                .filter(|(_, mu)| *mu != 0)
                .collect()
        })
        .collect();
    let mut checked = 0;
    let mut bad = 0;
    for n in [3usize, 5] {
        let fam = family(3, n);
        for i in 0..fam.len() {
            let l = fam.lpoly(i);
            let d = l.modulus_poly(&ctx);
            let b = invert_series(&l, 4).unwrap();
            for (deg, list) in rs.iter().enumerate() {
                let brute: i128 = list
                    .iter()
                    .map(|(r, mu)| *mu as i128 * jacobi_symbol(r, &d).unwrap() as i128)
                    .sum();
                bad += (brute != b[deg]) as usize;
                checked += 1;
            }
        }
    }
    outcome(bad == 0, format!("{checked} values b_d(R), {bad} mismatches"))
}

fn criterion_11() -> Outcome {
    let t0 = Instant::now();
    let mut fails = BTreeMap::new();

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let near = (0..10_000)
        .filter(|_| !near_zero_lemma_holds(rng.gen_range(0.0..=50.0)))
        .count();
    fails.insert("near-zero", near);

    let mut deg = 0;
    for q in 1..=2usize {
        for (mu, mult) in decompose_sym_truncated(q, 2, 12).unwrap() {
            deg += mult.total_degrees().filter(|&d| d < mu.size() as i32).count();
        }
    }
    fails.insert("m1-degree", deg);

    let mut bound = 0;
    for k in 1..=2usize {
        let pts: Vec<Vec<Complex64>> = (0..100)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        Complex64::from_polar(
                            5f64.powf(rng.gen_range(-1.0..1.0)),
                            rng.gen_range(0.0..std::f64::consts::TAU),
                        )
                    })
                    .collect()
            })
            .collect();
        for rho in Partition::all_in_box(3, k as u32) {
            bound += check_multiplicity_bound(Group::Sp, &rho, k, 6, 0, &pts)
                .unwrap()
                .iter()
                .filter(|s| !s.pass)
                .count();
        }
    }
    fails.insert("multiplicity-bound", bound);

    let mut jac = 0;
    for q in [3u32, 5] {
        let ctx = FieldCtx::prime(q).unwrap();
        for d in 1..=4usize {
            let total = (q as u64).pow(d as u32);
            for idx in 0..total {
                let f = PolyQ::new(&ctx, monic_from_index(q, d, idx));
                if !f.is_irreducible() {
                    continue;
                }
                for r_idx in 0..total {
                    let r = PolyQ::new(&ctx, monic_from_index(q, d, r_idx)[..d].to_vec());
                    jac += (Some(jacobi_symbol(&r, &f).unwrap()) != euler_criterion(&r, &f).unwrap()) as usize;
                }
            }
        }
    }
    fails.insert("jacobi-vs-euler", jac);

    let mut eval = 0;
    let fam = family(3, 5);
    for i in 0..fam.len() {
        let l = fam.completed(i).unwrap();
        let z = zero_angles(&l, DEFAULT_ZERO_TOL).unwrap();
        for _ in 0..20 {
            let s = Complex64::new(0.5 + rng.gen_range(-0.3..=0.3), rng.gen_range(-20.0..20.0));
            let x = -((Complex64::new(0.5, 0.0) - s) * 3f64.ln()).exp();
            let prod: Complex64 = z
                .angles
                .iter()
                .map(|&t| 1.0 + x * Complex64::from_polar(1.0, t))
                .product();
            let direct = l.eval((-s * 3f64.ln()).exp());
            eval += ((prod - direct).norm() > 1e-9 * direct.norm().max(1e-300)) as usize;
        }
    }
    fails.insert("evaluation", eval);

    let secs = t0.elapsed().as_secs_f64();
    let total: usize = fails.values().sum();
    let detail = fails
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ");
    outcome(total == 0 && secs < 300.0, format!("failures: {detail}; {secs:.1} s"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "family counts", criterion_1),
        (2, "charsum = pointcount", criterion_2),
        (3, "functional equation and zeros", criterion_3),
        (4, "skew Howe duality", criterion_4),
        (5, "stable numerators", criterion_5),
        (6, "constants ledger", criterion_6),
        (7, "Moebius statistic", criterion_7),
        (8, "one-level density", criterion_8),
        (9, "ratios vs recipe", criterion_9),
        (10, "inverse series oracle", criterion_10),
        (11, "invariant suites", criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let t0 = Instant::now();
        let o = run();
        println!(
            "criterion {id:>2} {:<4} {name}: {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail.trim_end(),
            t0.elapsed().as_secs_f64()
        );
        let known = KNOWN_UNATTAINABLE.iter().find(|(k, _)| *k == id);
        match (o.pass, known) {
            (false, Some((_, why))) => println!("             known unattainable: {why}"),
            (false, None) => unexpected.push(format!("{id} failed")),
            (true, Some(_)) => unexpected.push(format!("{id} passed but is listed as unattainable")),
            (true, None) => {}
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected");
    } else {
        println!("acceptance: unexpected outcomes: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
