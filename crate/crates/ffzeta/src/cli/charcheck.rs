use anyhow::{bail, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::symchar::{
    check_multiplicity_bound, check_reconstruction, decompose_wedge_oracle, near_zero_lemma_holds, skew_multiplicity,
    sp_character_jt, sp_character_weyl, Group, LaurentPoly, Partition, MAX_RANK, MAX_WEDGE_K,
};

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub detail: String,
}

fn result(suite: &str, pass: bool, detail: String) -> SuiteResult {
    SuiteResult {
        suite: suite.to_string(),
        pass,
        detail,
    }
}

/// Run the identity suites for `K` spectral variables and ranks up to `m`.
pub fn run_charcheck(k: usize, m: usize, seed: u64) -> Result<Vec<SuiteResult>> {
    if k > MAX_WEDGE_K {
        bail!("unsupported K = {k} (at most {MAX_WEDGE_K})");
    }
    if m == 0 || m > MAX_RANK {
        bail!("unsupported rank m = {m} (1..={MAX_RANK})");
    }
    let mut out = Vec::new();
    if k == 0 {
        let d = decompose_wedge_oracle(0, m, 64)?;
        let ok = d.len() == 1 && d.get(&Partition::empty()) == Some(&LaurentPoly::one(0));
        out.push(result("skew-howe", ok, "empty product".into()));
        return Ok(out);
    }

    let mut checked = 0;
    let mut bad = Vec::new();
    let mut empty_mult = String::new();
    for rank in 1..=m {
        let oracle = decompose_wedge_oracle(k, rank, 2 * MAX_RANK * MAX_WEDGE_K)?;
        let c = 2 * rank as u32;
        for rho in Partition::all_in_box(rank, k as u32) {
            let closed = skew_multiplicity(Group::Sp, &rho, k, c, 0)?;
            let brute = oracle.get(&rho).cloned().unwrap_or_else(|| LaurentPoly::zero(k));
            if rank == m && rho.is_empty() {
                empty_mult = closed.to_string();
            }
            if closed != brute {
                bad.push(format!("m={rank} rho={rho}"));
            }
            checked += 1;
        }
        if oracle.keys().any(|r| !r.fits_in_box(rank, k as u32)) {
            bad.push(format!("m={rank} support"));
        }
    }
    out.push(result(
        "skew-howe",
        bad.is_empty(),
        format!(
            "{checked} multiplicities; m0[empty] at c={} is {empty_mult} {}",
            2 * m,
            bad.join(" ")
        ),
    ));

    let mut checked = 0;
    let mut bad = Vec::new();
    for rank in 1..=m {
        for size in 0..=(2 * rank as u32).min(6) {
            for lam in Partition::all_of_size(size).into_iter().filter(|l| l.len() <= rank) {
                let weyl = sp_character_weyl(&lam, rank)?;
                if weyl != sp_character_jt(&lam, rank) || !weyl.is_nonneg_integral() {
                    bad.push(format!("m={rank} lambda={lam}"));
                }
                checked += 1;
            }
        }
    }
    out.push(result(
        "sp-character",
        bad.is_empty(),
        format!("{checked} characters {}", bad.join(" ")),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = 5.0f64;
    let points: Vec<Vec<Complex64>> = (0..100)
        .map(|_| {
            (0..k)
                .map(|_| {
                    Complex64::from_polar(
                        q.powf(rng.gen_range(-1.0..1.0)),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    )
                })
                .collect()
        })
        .collect();
    let mut worst = 0.0f64;
    let mut pass = true;
    for rho in Partition::all_in_box(m, k as u32) {
        for s in check_multiplicity_bound(Group::Sp, &rho, k, 2 * m as u32, 0, &points)? {
            pass &= s.pass;
            worst = worst.max(s.value / s.bound);
        }
    }
    out.push(result("bound-lemma", pass, format!("max value/bound {worst:.3e}")));

    let mut checked = 0;
    let mut bad = Vec::new();
    for size in 0..=4u32 {
        for rho in Partition::all_of_size(size) {
            let l = rho.len() as u32;
            if !check_reconstruction(Group::Sp, &rho, k, 0, &[2 * l + 2, 2 * l + 4, 2 * l + 6])? {
                bad.push(format!("rho={rho}"));
            }
            checked += 1;
        }
    }
    out.push(result(
        "stable-numerator",
        bad.is_empty(),
        format!("{checked} partitions {}", bad.join(" ")),
    ));

    let fails = (0..10_000).filter(|&i| !near_zero_lemma_holds(i as f64 * 5e-3)).count();
    out.push(result("near-zero", fails == 0, "10000 grid points on [0, 50)".into()));
    Ok(out)
}
