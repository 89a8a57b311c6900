//! Factorization into monic irreducibles: square-free decomposition,
//! distinct-degree splitting, then Cantor–Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, FieldCtx};
use super::poly::{self, PolyQ};
use super::FfError;

/// Seed of the equal-degree splitting generator.
pub const DEFAULT_SPLIT_SEED: u64 = 0x5eed_f00d;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    /// Monic irreducible factors with multiplicity, sorted by degree then coefficients.
    pub factors: Vec<(PolyQ, u32)>,
}

impl Factorization {
    pub fn expand(&self, ctx: &FieldCtx) -> PolyQ {
        let mut acc = PolyQ::constant(ctx, self.unit);
        for (g, m) in &self.factors {
            acc = acc.mul(&g.pow(*m)).unwrap();
        }
        acc
    }

    /// Total number of irreducible factors counted with multiplicity.
    pub fn omega(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

fn pth_root(f: &FieldCtx, a: &[Elem]) -> Vec<Elem> {
    let p = f.p() as usize;
    // x -> x^{q/p} inverts Frobenius on F_q
    let e = (f.order() / f.p()) as u64;
    a.iter().step_by(p).map(|&c| f.pow(c, e)).collect()
}

/// Square-free parts with multiplicities for a monic input.
fn squarefree_parts(f: &FieldCtx, a: &[Elem]) -> Vec<(Vec<Elem>, u32)> {
    let mut out = Vec::new();
    if a.len() <= 1 {
        return out;
    }
    let d = poly::derivative(f, a);
    let mut c = poly::gcd(f, a, &d);
    let mut w = poly::divrem(f, a, &c).0;
    let mut i = 1u32;
    while w.len() > 1 {
        let y = poly::gcd(f, &w, &c);
        let fac = poly::divrem(f, &w, &y).0;
        if fac.len() > 1 {
            out.push((fac, i));
        }
        c = poly::divrem(f, &c, &y).0;
        w = y;
        i += 1;
    }
    if c.len() > 1 {
        let root = pth_root(f, &c);
        for (g, m) in squarefree_parts(f, &root) {
            out.push((g, m * f.p()));
        }
    }
    out
}

/// Products of all irreducible factors of each degree.
fn distinct_degree(f: &FieldCtx, a: &[Elem]) -> Vec<(Vec<Elem>, usize)> {
    let t = vec![0, 1];
    let mut out = Vec::new();
    let mut rest = a.to_vec();
    let mut h = poly::rem(f, &t, &rest);
    let mut d = 1;
    while rest.len() > 2 * d {
        h = poly::frobenius_power(f, &h, 1, &rest);
        let g = poly::gcd(f, &poly::sub(f, &h, &t), &rest);
        if g.len() > 1 {
            rest = poly::divrem(f, &rest, &g).0;
            h = poly::rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

fn random_poly(f: &FieldCtx, deg_bound: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let v = (0..deg_bound).map(|_| rng.gen_range(0..f.order())).collect();
    poly::trimmed(v)
}

fn equal_degree(f: &FieldCtx, a: &[Elem], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<Elem>>) {
    let n = a.len() - 1;
    if n == d {
        out.push(a.to_vec());
        return;
    }
    let q = BigUint::from(f.order());
    loop {
        let r = random_poly(f, n, rng);
        if r.len() <= 1 {
            continue;
        }
        let b = if f.p() == 2 {
            // trace map to F_2: r + r^2 + ... + r^{2^{kd-1}}
            let steps = f.j() as usize * d;
            let mut acc = r.clone();
            let mut cur = r.clone();
            for _ in 1..steps {
                cur = poly::rem(f, &poly::mul(f, &cur, &cur), a);
                acc = poly::add(f, &acc, &cur);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1u32) / 2u32;
            poly::sub(f, &poly::powmod(f, &r, &e, a), &[1])
        };
        let g = poly::gcd(f, &b, a);
        if g.len() > 1 && g.len() < a.len() {
            let h = poly::divrem(f, a, &g).0;
            equal_degree(f, &g, d, rng, out);
            equal_degree(f, &h, d, rng, out);
            return;
        }
    }
}

pub fn factor_poly(f: &PolyQ) -> Result<Factorization, FfError> {
    factor_with_seed(f, DEFAULT_SPLIT_SEED)
}

pub fn factor_with_seed(f: &PolyQ, seed: u64) -> Result<Factorization, FfError> {
    let ctx = f.ctx();
    let unit = f.leading().ok_or(FfError::ZeroPolynomial)?;
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(PolyQ, u32)> = Vec::new();
    for (part, m) in squarefree_parts(ctx, monic.coeffs()) {
        for (block, d) in distinct_degree(ctx, &part) {
            let mut pieces = Vec::new();
            equal_degree(ctx, &block, d, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|g| (PolyQ::new(ctx, g), m)));
        }
    }
    factors.sort_by(|x, y| x.0.cmp(&y.0));
    let mut merged: Vec<(PolyQ, u32)> = Vec::with_capacity(factors.len());
    for (g, m) in factors {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += m,
            _ => merged.push((g, m)),
        }
    }
    let out = Factorization { unit, factors: merged };
    if out.expand(ctx) != *f {
        return Err(FfError::FactorizationMismatch);
    }
    Ok(out)
}

/// Möbius function on monic polynomials.
pub fn moebius_mu(f: &PolyQ) -> Result<i8, FfError> {
    if !f.is_monic() {
        return Err(FfError::NotMonic);
    }
    let ctx = f.ctx();
    if !super::squarefree_raw(ctx, f.coeffs()) {
        return Ok(0);
    }
    let count: usize = distinct_degree(ctx, f.coeffs())
        .iter()
        .map(|(g, d)| (g.len() - 1) / d)
        .sum();
    Ok(if count.is_multiple_of(2) { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let f = FieldCtx::new(3, 1).unwrap();
        let g = PolyQ::from_ints(&f, &[1, 0, 1]);
        let fac = factor_poly(&g).unwrap();
        assert_eq!(fac.factors, vec![(g.clone(), 1)]);
        // no linear factor divides t^2 + 1
        for a in 0..3 {
            assert!(!g.rem(&PolyQ::new(&f, vec![a, 1])).unwrap().is_zero());
        }
        let cubic = PolyQ::from_ints(&f, &[0, -1, 0, 1]);
        let fac = factor_poly(&cubic).unwrap();
        let want: Vec<_> = [0i64, 1, 2]
            .iter()
            .map(|&a| (PolyQ::from_ints(&f, &[a, 1]), 1))
            .collect();
        assert_eq!(fac.factors, want);
        let t4 = PolyQ::t(&f).pow(4);
        assert_eq!(factor_poly(&t4).unwrap().factors, vec![(PolyQ::t(&f), 4)]);
        assert_eq!(factor_poly(&PolyQ::zero(&f)), Err(FfError::ZeroPolynomial));
    }

    #[test]
    fn inseparable_parts() {
        let f = FieldCtx::new(3, 1).unwrap();
        // (t+1)^3 (t^2+1)^6 t
        let g = PolyQ::from_ints(&f, &[1, 1])
            .pow(3)
            .mul(&PolyQ::from_ints(&f, &[1, 0, 1]).pow(6))
            .unwrap()
            .mul(&PolyQ::t(&f))
            .unwrap()
            .scale(2);
        let fac = factor_poly(&g).unwrap();
        assert_eq!(fac.unit, 2);
        assert_eq!(
            fac.factors,
            vec![
                (PolyQ::t(&f), 1),
                (PolyQ::from_ints(&f, &[1, 1]), 3),
                (PolyQ::from_ints(&f, &[1, 0, 1]), 6)
            ]
        );
    }

    #[test]
    fn extension_and_char_two() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let g = PolyQ::new(&f4, vec![1, 2, 3, 0, 1, 1, 1]);
        assert_eq!(factor_poly(&g).unwrap().expand(&f4), g);
        let f9 = FieldCtx::new(3, 2).unwrap();
        let g = PolyQ::new(&f9, vec![4, 0, 7, 1, 0, 0, 8, 1]);
        assert_eq!(factor_poly(&g).unwrap().expand(&f9), g);
    }

    #[test]
    fn moebius_examples() {
        let f = FieldCtx::new(3, 1).unwrap();
        let t = PolyQ::t(&f);
        assert_eq!(moebius_mu(&t).unwrap(), -1);
        assert_eq!(moebius_mu(&PolyQ::one(&f)).unwrap(), 1);
        let sq = t.pow(2).mul(&PolyQ::from_ints(&f, &[1, 0, 1])).unwrap();
        assert_eq!(moebius_mu(&sq).unwrap(), 0);
        assert_eq!(moebius_mu(&PolyQ::from_ints(&f, &[0, -1, 0, 1])).unwrap(), -1);
        assert_eq!(moebius_mu(&t.scale(2)), Err(FfError::NotMonic));
    }
}
