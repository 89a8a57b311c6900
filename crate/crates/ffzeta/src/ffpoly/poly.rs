//! Dense polynomials over a `FieldCtx`.
//!
//! The free functions work on coefficient slices (low degree first, no
//! trailing zeros) and are shared by the hot loops; `PolyQ` wraps them with
//! context checking.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::field::{Elem, FieldCtx};
use super::FfError;

pub(crate) fn trimmed(mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn add(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = f.add(*o, s);
    }
    trimmed(out)
}

pub(crate) fn sub(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), 0);
    }
    for (o, &s) in out.iter_mut().zip(b) {
        *o = f.sub(*o, s);
    }
    trimmed(out)
}

pub(crate) fn scale(f: &FieldCtx, a: &[Elem], c: Elem) -> Vec<Elem> {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

pub(crate) fn mul(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (k, &y) in b.iter().enumerate() {
            out[i + k] = f.add(out[i + k], f.mul(x, y));
        }
    }
    trimmed(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = f.mul(r[i + db], inv);
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (k, &y) in b.iter().enumerate() {
            r[i + k] = f.sub(r[i + k], f.mul(c, y));
        }
    }
    r.truncate(db);
    (trimmed(q), trimmed(r))
}

pub(crate) fn rem(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    divrem(f, a, b).1
}

pub(crate) fn make_monic(f: &FieldCtx, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(f, a, f.inv(lc).unwrap()),
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub(crate) fn gcd(f: &FieldCtx, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub(crate) fn derivative(f: &FieldCtx, a: &[Elem]) -> Vec<Elem> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
        .collect();
    trimmed(out)
}

pub(crate) fn eval(f: &FieldCtx, a: &[Elem], x: Elem) -> Elem {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `base^e mod m` with an arbitrary-size exponent.
pub(crate) fn powmod(f: &FieldCtx, base: &[Elem], e: &BigUint, m: &[Elem]) -> Vec<Elem> {
    let mut acc: Vec<Elem> = if m.len() == 1 { Vec::new() } else { vec![1] };
    let b = rem(f, base, m);
    for i in (0..e.bits()).rev() {
        acc = rem(f, &mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
    }
    acc
}

/// `x^{order^k} mod m` by repeated Frobenius powering.
pub(crate) fn frobenius_power(f: &FieldCtx, x: &[Elem], k: usize, m: &[Elem]) -> Vec<Elem> {
    let q = BigUint::from(f.order());
    let mut cur = rem(f, x, m);
    for _ in 0..k {
        cur = powmod(f, &cur, &q, m);
    }
    cur
}

/// Irreducibility of a monic polynomial of degree ≥ 1 (Ben-Or test).
pub(crate) fn is_irreducible(f: &FieldCtx, a: &[Elem]) -> bool {
    let n = a.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let t = vec![0, 1];
    let mut h = rem(f, &t, a);
    for _ in 1..=n / 2 {
        h = frobenius_power(f, &h, 1, a);
        let g = gcd(f, &sub(f, &h, &t), a);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Compare by degree, then coefficients from the top down.
pub(crate) fn cmp_coeffs(a: &[Elem], b: &[Elem]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

/// Polynomial over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyQ {
    ctx: FieldCtx,
    coeffs: Vec<Elem>,
}

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    DivRem,
    Gcd,
    Derivative,
}

/// Result of [`poly_arith`]: one polynomial, or quotient and remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithOutput {
    One(PolyQ),
    Two(PolyQ, PolyQ),
}

/// Tagged ring operation. `Derivative` ignores `b`.
pub fn poly_arith(op: ArithOp, a: &PolyQ, b: &PolyQ) -> Result<ArithOutput, FfError> {
    use ArithOutput::*;
    Ok(match op {
        ArithOp::Add => One(a.add(b)?),
        ArithOp::Sub => One(a.sub(b)?),
        ArithOp::Mul => One(a.mul(b)?),
        ArithOp::DivRem => {
            let (q, r) = a.divrem(b)?;
            Two(q, r)
        }
        ArithOp::Gcd => One(a.gcd(b)?),
        ArithOp::Derivative => One(a.derivative()),
    })
}

impl PolyQ {
    /// Build from coefficients (low degree first). Entries must be field elements.
    pub fn new(ctx: &FieldCtx, coeffs: Vec<Elem>) -> Self {
        assert!(
            coeffs.iter().all(|&c| c < ctx.order()),
            "coefficient out of range for {:?}",
            ctx
        );
        PolyQ {
            ctx: ctx.clone(),
            coeffs: trimmed(coeffs),
        }
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, coeffs: &[i64]) -> Self {
        let v = coeffs.iter().map(|&c| ctx.from_int(c)).collect();
        PolyQ::new(ctx, v)
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        PolyQ {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        PolyQ::constant(ctx, 1)
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> Self {
        PolyQ::new(ctx, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(ctx: &FieldCtx) -> Self {
        PolyQ::new(ctx, vec![0, 1])
    }

    pub(crate) fn from_raw(ctx: &FieldCtx, coeffs: Vec<Elem>) -> Self {
        PolyQ {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Degree; `None` plays the role of minus infinity for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// `|r| = q^{deg r}`; `None` for zero.
    pub fn norm(&self) -> Option<BigUint> {
        self.degree().map(|d| BigUint::from(self.ctx.order()).pow(d as u32))
    }

    pub fn monic(&self) -> PolyQ {
        PolyQ::from_raw(&self.ctx, make_monic(&self.ctx, &self.coeffs))
    }

    fn same_ctx(&self, other: &PolyQ) -> Result<(), FfError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(FfError::MixedContexts)
        }
    }

    pub fn add(&self, other: &PolyQ) -> Result<PolyQ, FfError> {
        self.same_ctx(other)?;
        Ok(PolyQ::from_raw(&self.ctx, add(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &PolyQ) -> Result<PolyQ, FfError> {
        self.same_ctx(other)?;
        Ok(PolyQ::from_raw(&self.ctx, sub(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &PolyQ) -> Result<PolyQ, FfError> {
        self.same_ctx(other)?;
        Ok(PolyQ::from_raw(&self.ctx, mul(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    pub fn scale(&self, c: Elem) -> PolyQ {
        PolyQ::from_raw(&self.ctx, scale(&self.ctx, &self.coeffs, c))
    }

    pub fn divrem(&self, other: &PolyQ) -> Result<(PolyQ, PolyQ), FfError> {
        self.same_ctx(other)?;
        if other.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let (q, r) = divrem(&self.ctx, &self.coeffs, &other.coeffs);
        Ok((PolyQ::from_raw(&self.ctx, q), PolyQ::from_raw(&self.ctx, r)))
    }

    pub fn rem(&self, other: &PolyQ) -> Result<PolyQ, FfError> {
        Ok(self.divrem(other)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &PolyQ) -> Result<PolyQ, FfError> {
        self.same_ctx(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(FfError::ZeroPolynomial);
        }
        Ok(PolyQ::from_raw(&self.ctx, gcd(&self.ctx, &self.coeffs, &other.coeffs)))
    }

    pub fn derivative(&self) -> PolyQ {
        PolyQ::from_raw(&self.ctx, derivative(&self.ctx, &self.coeffs))
    }

    pub fn pow(&self, e: u32) -> PolyQ {
        let mut acc = PolyQ::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    pub fn powmod(&self, e: &BigUint, m: &PolyQ) -> Result<PolyQ, FfError> {
        self.same_ctx(m)?;
        if m.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        Ok(PolyQ::from_raw(
            &self.ctx,
            powmod(&self.ctx, &self.coeffs, e, &m.coeffs),
        ))
    }

    pub fn eval(&self, x: Elem) -> Elem {
        eval(&self.ctx, &self.coeffs, x)
    }

    /// Evaluate at an element of an extension of this polynomial's prime field.
    /// Coefficients must lie in the prime field.
    pub fn eval_embedded(&self, big: &FieldCtx, x: Elem) -> Elem {
        debug_assert_eq!(self.ctx.p(), big.p());
        eval(big, &self.coeffs, x)
    }

    /// Irreducibility test; constants are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.degree().is_some_and(|d| d >= 1) && is_irreducible(&self.ctx, &self.monic().coeffs)
    }
}

impl PartialOrd for PolyQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyQ {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_coeffs(&self.coeffs, &other.coeffs)
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{}", c)?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{}t", c)?,
                (_, 1) => write!(f, "t^{}", i)?,
                _ => write!(f, "{}t^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ[{}]({})", self.ctx.order(), self)
    }
}
