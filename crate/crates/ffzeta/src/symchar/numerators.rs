//! Stable skew multiplicities, the Weyl denominator product, and their stable
//! numerators as polynomials whose exponents are affine in the conductor `c`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;

use super::character::{sp_character, weyl_denominator};
use super::laurent::{rat, LaurentPoly};
use super::partition::Partition;
use super::SymError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Sp,
    O,
}

impl FromStr for Group {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, SymError> {
        match s {
            "Sp" | "sp" => Ok(Group::Sp),
            "O" | "o" => Ok(Group::O),
            _ => Err(SymError::Unsupported(format!("group {s}"))),
        }
    }
}

fn check_inputs(g: Group, k: usize, i: u8) -> Result<(), SymError> {
    match g {
        Group::Sp if i != 0 => Err(SymError::Unsupported("Sp with determinant twist".into())),
        Group::O if k > 1 => Err(SymError::Unsupported("O with K > 1".into())),
        _ if i > 1 => Err(SymError::Unsupported(format!("twist {i}"))),
        _ => Ok(()),
    }
}

/// The stable skew multiplicity `M⁰_ρ(x; c; i)` in `K` variables.
pub fn skew_multiplicity(g: Group, rho: &Partition, k: usize, c: u32, i: u8) -> Result<LaurentPoly, SymError> {
    check_inputs(g, k, i)?;
    if c % 2 == 1 {
        return Err(SymError::OddConductor(c));
    }
    if k == 0 {
        return Ok(LaurentPoly::one(0));
    }
    let half = c / 2;
    if rho.part(0) as usize > k {
        return Ok(LaurentPoly::zero(k));
    }
    match g {
        Group::O => {
            let l = rho.len() as i32;
            let e = if i == 0 { l } else { c as i32 - l };
            Ok(LaurentPoly::var_pow(1, 0, e))
        }
        Group::Sp => {
            if rho.len() > half as usize {
                return Ok(LaurentPoly::zero(k));
            }
            let conj = rho.conjugate();
            let lam = Partition::new((0..k).map(|j| half - conj.part(k - 1 - j)).collect())?;
            let ch = sp_character(&lam, k)?;
            Ok(ch.shift(&vec![half as i32; k], &rat(1)))
        }
    }
}

/// Exponent `constant + slope · c` in one variable.
pub type ParamExp = (i32, u8);

/// Laurent polynomial whose exponents are affine in the conductor `c`, with
/// slopes restricted to 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamLaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<ParamExp>, BigRational>,
}

impl ParamLaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        ParamLaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<ParamExp>, c: BigRational) -> Result<(), SymError> {
        if exps.iter().any(|&(_, s)| s > 1) {
            return Err(SymError::BadSlope);
        }
        let slot = self.terms.entry(exps.clone()).or_insert_with(|| rat(0));
        *slot += c;
        if *slot == rat(0) {
            self.terms.remove(&exps);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<ParamExp>, &BigRational)> {
        self.terms.iter()
    }

    /// Substitute an even conductor `c`.
    pub fn specialize(&self, c: u32) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.iter().map(|&(a, s)| a + s as i32 * c as i32).collect(), x.clone());
        }
        out
    }

    /// Pieces by slope pattern: `ε_u = +1` for slope 0 and `-1` for slope 1,
    /// with the `c`-dependence stripped.
    pub fn by_slope(&self) -> BTreeMap<Vec<i8>, LaurentPoly> {
        let mut out: BTreeMap<Vec<i8>, LaurentPoly> = BTreeMap::new();
        for eps in sign_patterns(self.nvars) {
            out.insert(eps, LaurentPoly::zero(self.nvars));
        }
        for (e, x) in &self.terms {
            let eps: Vec<i8> = e.iter().map(|&(_, s)| if s == 0 { 1 } else { -1 }).collect();
            out.get_mut(&eps)
                .unwrap()
                .add_term(e.iter().map(|&(a, _)| a).collect(), x.clone());
        }
        out
    }
}

/// All of `{+1, -1}^k`, `+1` first.
pub fn sign_patterns(k: usize) -> Vec<Vec<i8>> {
    (0..1u32 << k)
        .map(|mask| (0..k).map(|u| if mask >> u & 1 == 0 { 1 } else { -1 }).collect())
        .collect()
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| p[a] > p[b])
                .count();
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// `N_ρ(x; c; i) = M⁰_ρ(x; c; i) · D_K(x)` with exponents affine in `c`,
/// valid for every even `c ≥ 2 l(ρ)`.
pub fn numerator_param(g: Group, rho: &Partition, k: usize, i: u8) -> Result<ParamLaurentPoly, SymError> {
    check_inputs(g, k, i)?;
    let mut out = ParamLaurentPoly::zero(k);
    if k == 0 {
        out.add_term(Vec::new(), rat(1))?;
        return Ok(out);
    }
    if rho.part(0) as usize > k {
        return Ok(out);
    }
    match g {
        Group::O => {
            // x^{l} (1 - x²) or x^{c-l} (1 - x²)
            let l = rho.len() as i32;
            let (base, slope) = if i == 0 { (l, 0) } else { (-l, 1) };
            out.add_term(vec![(base, slope)], rat(1))?;
            out.add_term(vec![(base + 2, slope)], rat(-1))?;
        }
        Group::Sp => {
            // Weyl's formula: M⁰ D_K = (-1)^K (x_1⋯x_K)^{c/2+K} det(x_j^{a_r} - x_j^{-a_r})
            // with a_r = c/2 + b_r and b_r = K - r - ρ'_{K-r} (0-based r).
            let conj = rho.conjugate();
            let b: Vec<i32> = (0..k).map(|r| (k - r) as i32 - conj.part(k - 1 - r) as i32).collect();
            let k32 = k as i32;
            let overall = if k.is_multiple_of(2) { 1 } else { -1 };
            for (perm, sign) in permutations(k) {
                for choice in 0..1u32 << k {
                    let mut s = sign * overall;
                    let mut exps = Vec::with_capacity(k);
                    for (j, &r) in perm.iter().enumerate() {
                        if choice >> j & 1 == 0 {
                            // x_j^{c/2+K} · x_j^{c/2+b}
                            exps.push((k32 + b[r], 1));
                        } else {
                            // x_j^{c/2+K} · (-x_j^{-c/2-b})
                            s = -s;
                            exps.push((k32 - b[r], 0));
                        }
                    }
                    out.add_term(exps, rat(s))?;
                }
            }
        }
    }
    Ok(out)
}

/// Stable numerators `N^ε_ρ(x; i)` indexed by sign patterns.
pub fn stable_numerators(
    g: Group,
    rho: &Partition,
    k: usize,
    i: u8,
) -> Result<BTreeMap<Vec<i8>, LaurentPoly>, SymError> {
    Ok(numerator_param(g, rho, k, i)?.by_slope())
}

/// `Σ_ε N^ε_ρ ∏_u x_u^{(1-ε_u) c/2}` at a concrete even `c`.
pub fn reassemble(nums: &BTreeMap<Vec<i8>, LaurentPoly>, k: usize, c: u32) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(k);
    for (eps, piece) in nums {
        let shift: Vec<i32> = eps.iter().map(|&e| if e == 1 { 0 } else { c as i32 }).collect();
        acc.add_assign(&piece.shift(&shift, &rat(1)));
    }
    acc
}

/// Compare the reassembled numerators with `M⁰_ρ · D_K` computed through the
/// character determinant at each `c` in `cs`.
pub fn check_reconstruction(g: Group, rho: &Partition, k: usize, i: u8, cs: &[u32]) -> Result<bool, SymError> {
    let nums = stable_numerators(g, rho, k, i)?;
    let d = weyl_denominator(k);
    for &c in cs {
        let direct = skew_multiplicity(g, rho, k, c, i)?.mul(&d);
        if reassemble(&nums, k, c) != direct {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One sample of the multiplicity bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundSample {
    pub point: Vec<Complex64>,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// `|M⁰_ρ(x)| ≤ |x_1⋯x_K|^{c/2} ∏ (|x_u| + |x_u|^{-1} + 2)^{c/2 + l(ρ)}` at each point.
pub fn check_multiplicity_bound(
    g: Group,
    rho: &Partition,
    k: usize,
    c: u32,
    i: u8,
    points: &[Vec<Complex64>],
) -> Result<Vec<BoundSample>, SymError> {
    let m = skew_multiplicity(g, rho, k, c, i)?;
    let half = (c / 2) as i32;
    let expo = half + rho.len() as i32;
    Ok(points
        .iter()
        .map(|x| {
            let value = m.eval_complex(x).norm();
            let bound = x
                .iter()
                .map(|z| {
                    let a = z.norm();
                    a.powi(half) * (a + 1.0 / a + 2.0).powi(expo)
                })
                .product::<f64>();
            BoundSample {
                point: x.clone(),
                value,
                bound,
                pass: value <= bound * (1.0 + 1e-12),
            }
        })
        .collect())
}

/// `min(1, x) ≥ 1 - e^{-x} ≥ min(1, x)/2` for `x ≥ 0`.
pub fn near_zero_lemma_holds(x: f64) -> bool {
    let m = x.min(1.0);
    let v = -(-x).exp_m1();
    m >= v && v >= m / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn x1(terms: &[(i32, i64)]) -> LaurentPoly {
        let t: Vec<(Vec<i32>, i64)> = terms.iter().map(|&(e, c)| (vec![e], c)).collect();
        let refs: Vec<(&[i32], i64)> = t.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
        LaurentPoly::from_terms(1, &refs)
    }

    #[test]
    fn skew_examples() {
        let e = Partition::empty();
        assert_eq!(
            skew_multiplicity(Group::Sp, &e, 1, 4, 0).unwrap(),
            x1(&[(0, 1), (2, 1), (4, 1)])
        );
        assert_eq!(
            skew_multiplicity(Group::Sp, &p(&[1, 1]), 1, 4, 0).unwrap(),
            x1(&[(2, 1)])
        );
        assert!(skew_multiplicity(Group::Sp, &p(&[2]), 1, 4, 0).unwrap().is_zero());
        assert_eq!(skew_multiplicity(Group::Sp, &e, 0, 4, 0).unwrap(), LaurentPoly::one(0));
        assert_eq!(
            skew_multiplicity(Group::O, &p(&[1, 1]), 1, 6, 1).unwrap(),
            x1(&[(4, 1)])
        );
        assert!(skew_multiplicity(Group::Sp, &e, 1, 4, 1).is_err());
    }

    #[test]
    fn numerator_examples() {
        let n = stable_numerators(Group::Sp, &Partition::empty(), 1, 0).unwrap();
        assert_eq!(n[&vec![1]], x1(&[(0, 1)]));
        assert_eq!(n[&vec![-1]], x1(&[(2, -1)]));
        let n = stable_numerators(Group::Sp, &p(&[1]), 1, 0).unwrap();
        assert_eq!(n[&vec![1]], x1(&[(1, 1)]));
        assert_eq!(n[&vec![-1]], x1(&[(1, -1)]));
        let n = stable_numerators(Group::Sp, &Partition::empty(), 0, 0).unwrap();
        assert_eq!(n.len(), 1);
        assert_eq!(n[&Vec::<i8>::new()], LaurentPoly::one(0));
    }

    #[test]
    fn reconstruction_small() {
        for rho in [Partition::empty(), p(&[1]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])] {
            let l = rho.len() as u32;
            let cs = [2 * l + 2, 2 * l + 4, 2 * l + 6];
            assert!(check_reconstruction(Group::Sp, &rho, 2, 0, &cs).unwrap(), "{rho}");
        }
        assert!(check_reconstruction(Group::O, &p(&[1]), 1, 1, &[4, 6, 8]).unwrap());
    }

    #[test]
    fn bound_example() {
        let s = check_multiplicity_bound(
            Group::Sp,
            &Partition::empty(),
            1,
            4,
            0,
            &[vec![Complex64::new(1.0, 0.0)]],
        )
        .unwrap();
        assert_eq!(s[0].value, 3.0);
        assert_eq!(s[0].bound, 16.0);
        assert!(s[0].pass);
    }

    #[test]
    fn near_zero_samples() {
        assert!([0.0, 1e-9, 0.5, 1.0, 3.0, 50.0]
            .iter()
            .all(|&x| near_zero_lemma_holds(x)));
    }
}
