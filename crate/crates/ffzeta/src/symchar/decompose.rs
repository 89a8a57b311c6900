//! Brute-force decompositions of `∏ det(1 + x_i A)` and `∏ det(1 - y_i A)^{-1}`
//! into symplectic characters of `A ∈ Sp(2m)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::character::{complete_homogeneous, sp_character};
use super::laurent::{rat, Exps, LaurentPoly};
use super::partition::Partition;
use super::SymError;

/// Largest sizes accepted by the oracles.
pub const MAX_WEDGE_K: usize = 2;
pub const MAX_RANK: usize = 4;
pub const MAX_SYM_Q: usize = 2;
pub const MAX_SYM_DEGREE: usize = 16;

pub type Decomposition = BTreeMap<Partition, LaurentPoly>;

/// Peel highest weights off a Weyl-invariant polynomial in `m` variables,
/// lexicographically largest first.
fn peel(mut f: LaurentPoly, m: usize) -> Result<Vec<(Partition, BigRational)>, SymError> {
    let mut out = Vec::new();
    while let Some((e, c)) = f.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let dominant = e.windows(2).all(|w| w[0] >= w[1]) && e.last().is_none_or(|&x| x >= 0);
        if !dominant {
            return Err(SymError::NotInvariant);
        }
        let lam = Partition::new(e.iter().map(|&x| x as u32).collect())?;
        let ch = sp_character(&lam, m)?;
        f = f.sub(&ch.scale(&c));
        out.push((lam, c));
    }
    Ok(out)
}

/// Split a polynomial in `outer + m` variables into characters in the last `m`,
/// returning multiplicities as polynomials in the first `outer`.
fn decompose_inner(f: &LaurentPoly, outer: usize, m: usize) -> Result<Decomposition, SymError> {
    let mut out: Decomposition = BTreeMap::new();
    for (head, inner) in f.split_vars(outer) {
        for (lam, c) in peel(inner, m)? {
            out.entry(lam)
                .or_insert_with(|| LaurentPoly::zero(outer))
                .add_term(head.clone(), c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Multiplicities `m⁰_ρ(x)` in `∏_{i≤K} det(1 + x_i A)`, `A ∈ Sp(2m)`.
/// `cap` bounds the total x-degree `2mK` of the expansion.
pub fn decompose_wedge_oracle(k: usize, m: usize, cap: usize) -> Result<Decomposition, SymError> {
    if k > MAX_WEDGE_K || m > MAX_RANK || m == 0 || 2 * m * k > cap {
        return Err(SymError::CapExceeded);
    }
    let nv = k + m;
    let mut prod = LaurentPoly::one(nv);
    for i in 0..k {
        for j in 0..m {
            for s in [1, -1] {
                let mut e: Exps = vec![0; nv];
                e[i] = 1;
                e[k + j] = s;
                let factor = LaurentPoly::one(nv).add(&LaurentPoly::monomial(nv, e, rat(1)));
                prod = prod.mul(&factor);
            }
        }
    }
    decompose_inner(&prod, k, m)
}

fn sym_expansion(q: usize, m: usize, cap: usize) -> LaurentPoly {
    let nv = q + m;
    let mut alphabet: Vec<Exps> = Vec::new();
    for j in 0..m {
        for s in [1, -1] {
            let mut e = vec![0; nv];
            e[q + j] = s;
            alphabet.push(e);
        }
    }
    let h = complete_homogeneous(&alphabet, nv, cap);
    let mut prod = LaurentPoly::one(nv);
    for i in 0..q {
        let mut series = LaurentPoly::zero(nv);
        for (d, hd) in h.iter().enumerate() {
            let mut shift = vec![0; nv];
            shift[i] = d as i32;
            series.add_assign(&hd.shift(&shift, &rat(1)));
        }
        let raw = prod.mul(&series);
        prod = raw.filter(|e| e[..q].iter().sum::<i32>() <= cap as i32);
    }
    prod
}

/// Multiplicities `m¹_μ(y)` in `∏_{i≤Q} det(1 - y_i A)^{-1}` truncated at total
/// y-degree `cap`. Requires `m ≥ Q`; the result is recomputed at rank `m + 1`
/// and must not change.
pub fn decompose_sym_truncated(q: usize, m: usize, cap: usize) -> Result<Decomposition, SymError> {
    if q > MAX_SYM_Q || m > MAX_RANK || cap > MAX_SYM_DEGREE || m == 0 || m < q {
        return Err(SymError::CapExceeded);
    }
    if q == 0 {
        let mut out = BTreeMap::new();
        out.insert(Partition::empty(), LaurentPoly::one(0));
        return Ok(out);
    }
    let here = decompose_inner(&sym_expansion(q, m, cap), q, m)?;
    let above = decompose_inner(&sym_expansion(q, m + 1, cap), q, m + 1)?;
    if here != above {
        return Err(SymError::RankDependence);
    }
    if here.keys().any(|mu| mu.len() > q) {
        return Err(SymError::SupportViolation);
    }
    Ok(here)
}

/// Σ_ρ m(1,…,1) · dim ρ, for checking against a dimension count.
pub fn weighted_dimension(dec: &Decomposition, m: usize) -> Result<BigRational, SymError> {
    let mut acc = BigRational::zero();
    for (lam, mult) in dec {
        acc += mult.at_ones() * sp_character(lam, m)?.at_ones();
    }
    Ok(acc)
}
