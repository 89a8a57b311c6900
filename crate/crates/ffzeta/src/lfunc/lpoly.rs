//! Weil polynomials of quadratic characters by character sums and by point counts.

use crate::ffpoly::{jacobi_raw, monic_from_index, squarefree_raw, Elem, FieldCtx, PolyQ};

use super::LfError;

/// Integer polynomial `L̂(u) = Σ â_N u^N` attached to `χ_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: u32,
    /// Degree of `d`.
    pub n: usize,
    /// Digits (a_1, ..., a_n) of `d = t^n + a_1 t^{n-1} + ... + a_n`.
    pub dcoeffs: Vec<u32>,
    pub lhat: Vec<i64>,
    pub completed: bool,
    /// Degree of the completed polynomial.
    pub c: usize,
    pub w: Option<i8>,
}

/// `2⌊(n-1)/2⌋`.
pub fn conductor_degree(n: usize) -> usize {
    2 * (n.saturating_sub(1) / 2)
}

pub(crate) fn digits_of(d: &PolyQ) -> Vec<u32> {
    let c = d.coeffs();
    c[..c.len() - 1].iter().rev().copied().collect()
}

impl LPolynomial {
    /// Uncompleted record as stored in caches.
    pub fn from_parts(q: u32, dcoeffs: Vec<u32>, lhat: Vec<i64>) -> Self {
        let n = dcoeffs.len();
        LPolynomial {
            q,
            n,
            dcoeffs,
            lhat,
            completed: false,
            c: n.saturating_sub(1),
            w: None,
        }
    }

    /// Completed and functional-equation-checked polynomial.
    pub fn completed(q: u32, dcoeffs: Vec<u32>, lhat: Vec<i64>) -> Result<Self, LfError> {
        let mut l = complete(&Self::from_parts(q, dcoeffs, lhat))?;
        check_functional_equation(&mut l)?;
        Ok(l)
    }

    /// Coefficient `â_N`, zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> i64 {
        self.lhat.get(k).copied().unwrap_or(0)
    }

    /// Evaluate at a complex `u` by Horner's rule.
    pub fn eval(&self, u: num_complex::Complex64) -> num_complex::Complex64 {
        self.lhat
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, &a| acc * u + a as f64)
    }

    /// The modulus `d` as a polynomial over F_q.
    pub fn modulus_poly(&self, ctx: &FieldCtx) -> PolyQ {
        let mut v: Vec<Elem> = self.dcoeffs.iter().rev().copied().collect();
        v.push(1);
        PolyQ::new(ctx, v)
    }
}

fn check_modulus(ctx: &FieldCtx, d: &PolyQ) -> Result<usize, LfError> {
    if !ctx.is_prime_field() || ctx.p() == 2 {
        return Err(LfError::NotOddPrime(ctx.order()));
    }
    if d.ctx() != ctx {
        return Err(LfError::Ff(crate::ffpoly::FfError::MixedContexts));
    }
    let n = match d.degree() {
        Some(n) if n >= 1 && d.is_monic() => n,
        _ => return Err(LfError::BadModulus),
    };
    if !squarefree_raw(ctx, d.coeffs()) {
        return Err(LfError::NotSquarefree);
    }
    Ok(n)
}

/// `â_N` by summing `(r/d)` over all monic `r` of degree `N < n`.
pub fn lpoly_charsum(ctx: &FieldCtx, d: &PolyQ) -> Result<LPolynomial, LfError> {
    let n = check_modulus(ctx, d)?;
    let q = ctx.order();
    let sum_degree = |deg: usize| -> i64 {
        (0..(q as u64).pow(deg as u32))
            .map(|idx| jacobi_raw(ctx, &monic_from_index(q, deg, idx), d.coeffs()) as i64)
            .sum()
    };
    let lhat: Vec<i64> = (0..n).map(sum_degree).collect();
    let top = sum_degree(n);
    if top != 0 {
        return Err(LfError::SelfCheck { degree: n, value: top });
    }
    Ok(LPolynomial::from_parts(q, digits_of(d), lhat))
}

/// Power sums `P_j = Σ_{t ∈ F_{q^j}} χ_j(d*(t))` for `j = 1..=g`, where
/// `d* = (-1)^n d` is the modulus twisted so that `P_j = -Σ β_i^j`.
pub fn twisted_power_sums(ctx: &FieldCtx, d: &PolyQ, g: usize) -> Result<Vec<i64>, LfError> {
    let n = d.degree().unwrap_or(0);
    let p = ctx.p();
    let mut out = Vec::with_capacity(g);
    for j in 1..=g {
        let big = FieldCtx::cached(p, j as u32)?;
        let s: i64 = (0..big.order())
            .map(|t| big.chi(crate::ffpoly::PolyQ::eval_embedded(d, &big, t)) as i64)
            .sum();
        // χ_j(-1) = χ(-1)^j
        let minus_one = ctx.chi(ctx.neg(1)) as i64;
        let twist = if n % 2 == 1 { minus_one.pow(j as u32) } else { 1 };
        out.push(twist * s);
    }
    Ok(out)
}

/// Newton's identities: `k a_k = Σ_{j=1}^k P_j a_{k-j}` for `k ≤ g`, then the
/// functional equation `a_{2g-k} = q^{g-k} a_k`.
pub(crate) fn weil_from_power_sums(q: u32, g: usize, sums: &[i64]) -> Result<Vec<i64>, LfError> {
    let mut a = vec![0i64; 2 * g + 1];
    a[0] = 1;
    for k in 1..=g {
        let s: i64 = (1..=k).map(|j| sums[j - 1] * a[k - j]).sum();
        if s % k as i64 != 0 {
            return Err(LfError::Newton { k });
        }
        a[k] = s / k as i64;
    }
    for k in 0..g {
        a[2 * g - k] = (q as i64).pow((g - k) as u32) * a[k];
    }
    Ok(a)
}

/// Odd-degree moduli only. Agrees exactly with [`lpoly_charsum`].
pub fn lpoly_pointcount(ctx: &FieldCtx, d: &PolyQ) -> Result<LPolynomial, LfError> {
    let n = check_modulus(ctx, d)?;
    if n % 2 == 0 {
        return Err(LfError::EvenDegree(n));
    }
    let g = (n - 1) / 2;
    let sums = twisted_power_sums(ctx, d, g)?;
    let lhat = weil_from_power_sums(ctx.order(), g, &sums)?;
    Ok(LPolynomial::from_parts(ctx.order(), digits_of(d), lhat))
}

/// Divide by `1 - u` when `n` is even.
pub fn complete(l: &LPolynomial) -> Result<LPolynomial, LfError> {
    if l.completed {
        return Err(LfError::AlreadyCompleted);
    }
    let mut out = l.clone();
    out.completed = true;
    out.c = conductor_degree(l.n);
    if l.n % 2 == 1 {
        out.lhat.resize(out.c + 1, 0);
        return Ok(out);
    }
    // synthetic division by (1 - u): b_k = a_k + b_{k-1}
    let mut b = Vec::with_capacity(l.lhat.len());
    let mut run = 0i64;
    for &a in &l.lhat {
        run += a;
        b.push(run);
    }
    if b.pop() != Some(0) {
        return Err(LfError::NotDivisible);
    }
    b.resize(out.c + 1, 0);
    out.lhat = b;
    Ok(out)
}

/// Verify `â_{c-N} = w q^{c/2-N} â_N` exactly and record `w`.
pub fn check_functional_equation(l: &mut LPolynomial) -> Result<i8, LfError> {
    if !l.completed {
        return Err(LfError::NotCompleted);
    }
    let c = l.c;
    let half = (c / 2) as u32;
    let q = l.q as i128;
    let top = l.coeff(c) as i128;
    let scale = q.pow(half);
    let w = if top == scale {
        1
    } else if top == -scale {
        -1
    } else {
        return Err(LfError::RootNumber);
    };
    // cross-multiplied: â_{c-N} q^N = w q^{c/2} â_N
    for k in 0..=c {
        let lhs = l.coeff(c - k) as i128 * q.pow(k as u32);
        let rhs = w as i128 * scale * l.coeff(k) as i128;
        if lhs != rhs {
            return Err(LfError::FunctionalEquation { index: k });
        }
    }
    if l.lhat.len() > c + 1 && l.lhat[c + 1..].iter().any(|&x| x != 0) {
        return Err(LfError::FunctionalEquation { index: c + 1 });
    }
    if l.n % 2 == 1 && w != 1 {
        return Err(LfError::RootNumber);
    }
    l.w = Some(w);
    Ok(w)
}

/// Affine and projective point counts of `y² = d(t)` over F_{q^j}.
pub fn point_count_curve(ctx: &FieldCtx, d: &PolyQ, j: u32) -> Result<(u64, u64), LfError> {
    let n = check_modulus(ctx, d)?;
    if n % 2 == 0 {
        return Err(LfError::EvenDegree(n));
    }
    let big = FieldCtx::cached(ctx.p(), j)?;
    let affine: i64 = (0..big.order())
        .map(|t| 1 + big.chi(PolyQ::eval_embedded(d, &big, t)) as i64)
        .sum();
    Ok((affine as u64, affine as u64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> FieldCtx {
        FieldCtx::new(q, 1).unwrap()
    }

    #[test]
    fn charsum_examples() {
        let k = f(3);
        let l = lpoly_charsum(&k, &PolyQ::t(&k)).unwrap();
        assert_eq!(l.lhat, vec![1]);
        let d = PolyQ::from_ints(&k, &[0, -1, 0, 1]);
        assert_eq!(lpoly_charsum(&k, &d).unwrap().lhat, vec![1, 0, 3]);
    }

    #[test]
    fn pointcount_examples() {
        let k = f(3);
        let d = PolyQ::from_ints(&k, &[0, -1, 0, 1]);
        assert_eq!(lpoly_pointcount(&k, &d).unwrap().lhat, vec![1, 0, 3]);
        assert_eq!(lpoly_pointcount(&k, &PolyQ::t(&k)).unwrap().lhat, vec![1]);
        let k5 = f(5);
        let d = PolyQ::from_ints(&k5, &[0, 1, 0, 1]);
        assert_eq!(lpoly_pointcount(&k5, &d).unwrap(), lpoly_charsum(&k5, &d).unwrap());
        let even = PolyQ::from_ints(&k, &[1, 0, 1]);
        assert_eq!(lpoly_pointcount(&k, &even), Err(LfError::EvenDegree(2)));
    }

    #[test]
    fn rejects_bad_moduli() {
        let k = f(3);
        assert_eq!(
            lpoly_charsum(&k, &PolyQ::from_ints(&k, &[0, 0, 1])),
            Err(LfError::NotSquarefree)
        );
        let k9 = FieldCtx::new(3, 2).unwrap();
        assert!(matches!(
            lpoly_charsum(&k9, &PolyQ::t(&k9)),
            Err(LfError::NotOddPrime(9))
        ));
    }

    #[test]
    fn completion() {
        let l = LPolynomial::from_parts(3, vec![0, 2, 0], vec![1, 0, 3]);
        let c = complete(&l).unwrap();
        assert_eq!((c.c, c.lhat.clone()), (2, vec![1, 0, 3]));
        // (1 - u)(1 + 2u) = 1 + u - 2u^2
        let even = LPolynomial::from_parts(3, vec![0, 0, 0, 1], vec![1, 1, -2, 0]);
        let c = complete(&even).unwrap();
        assert_eq!((c.c, c.lhat), (2, vec![1, 2, 0]));
        let bad = LPolynomial::from_parts(3, vec![0, 0, 0, 1], vec![1, 1, 0, 0]);
        assert_eq!(complete(&bad), Err(LfError::NotDivisible));
    }

    #[test]
    fn functional_equation() {
        let mut l = complete(&LPolynomial::from_parts(3, vec![0, 2, 0], vec![1, 0, 3])).unwrap();
        assert_eq!(check_functional_equation(&mut l), Ok(1));
        let mut trivial = complete(&LPolynomial::from_parts(3, vec![0], vec![1])).unwrap();
        assert_eq!(check_functional_equation(&mut trivial), Ok(1));
        let mut bad = complete(&LPolynomial::from_parts(5, vec![0; 5], vec![1, 2, 3, 4, 25])).unwrap();
        assert!(check_functional_equation(&mut bad).is_err());
    }

    #[test]
    fn curve_counts() {
        let k = f(3);
        let d = PolyQ::from_ints(&k, &[0, -1, 0, 1]);
        assert_eq!(point_count_curve(&k, &d, 1).unwrap(), (3, 4));
        // q^2 + 1 - Σβ^2 with L̂ = 1 + 3u^2: β = ±i√3, Σβ^2 = -6
        assert_eq!(point_count_curve(&k, &d, 2).unwrap().1, 9 + 1 + 6);
        assert_eq!(point_count_curve(&k, &PolyQ::t(&k), 1).unwrap(), (3, 4));
    }
}
