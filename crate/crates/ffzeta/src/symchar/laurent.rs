//! Multivariate Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::SymError;

pub type Exps = Vec<i32>;

/// Map from exponent vectors to nonzero coefficients. Lexicographic order on
/// exponents, so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exps, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, vec![0; nvars], rat(1))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Exps, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// `x_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Self::monomial(nvars, v, rat(1))
    }

    /// Build from `(exponents, integer coefficient)` pairs.
    pub fn from_terms(nvars: usize, terms: &[(&[i32], i64)]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e.to_vec(), rat(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<(&Exps, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exps: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars);
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        assert_eq!(self.nvars, other.nvars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial `c · x^shift`.
    pub fn shift(&self, shift: &[i32], c: &BigRational) -> LaurentPoly {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            let ne = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            out.add_term(ne, x * c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Per-variable (min, max) exponents; `None` for zero.
    pub fn exponent_box(&self) -> Option<Vec<(i32, i32)>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut b: Vec<(i32, i32)> = first.iter().map(|&e| (e, e)).collect();
        for e in it {
            for (slot, &x) in b.iter_mut().zip(e) {
                slot.0 = slot.0.min(x);
                slot.1 = slot.1.max(x);
            }
        }
        Some(b)
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly, SymError> {
        let Some(dbox) = d.exponent_box() else {
            return Err(SymError::DivisionByZero);
        };
        let mut q = Self::zero(self.nvars);
        let Some(nbox) = self.exponent_box() else {
            return Ok(q);
        };
        let (de, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let e: Exps = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let inside = e
                .iter()
                .zip(nbox.iter().zip(&dbox))
                .all(|(&x, (nb, db))| x >= nb.0 - db.0 && x <= nb.1 - db.1);
            if !inside {
                return Err(SymError::NotDivisible);
            }
            let c = &rc / &dc;
            for (te, tc) in &d.terms {
                let ne = e.iter().zip(te).map(|(a, b)| a + b).collect();
                r.add_term(ne, -(&c * tc));
            }
            q.add_term(e, c);
        }
        Ok(q)
    }

    /// Sum of coefficients, i.e. the value at all-ones.
    pub fn at_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn eval_rational(&self, x: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                let p = num_traits::pow(xi.clone(), k.unsigned_abs() as usize);
                t *= if k >= 0 { p } else { p.recip() };
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (xi, &k) in x.iter().zip(e) {
                t *= xi.powi(k);
            }
            acc += t;
        }
        acc
    }

    /// All coefficients are nonnegative integers.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    /// Total degree of every monomial (sum of exponents).
    pub fn total_degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.terms.keys().map(|e| e.iter().sum())
    }

    /// Keep the terms whose exponents satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&[i32]) -> bool) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Group terms by the exponents of the first `at` variables.
    pub(crate) fn split_vars(&self, at: usize) -> BTreeMap<Exps, LaurentPoly> {
        let mut out: BTreeMap<Exps, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let (head, tail) = e.split_at(at);
            out.entry(head.to_vec())
                .or_insert_with(|| LaurentPoly::zero(self.nvars - at))
                .add_term(tail.to_vec(), c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, k)
                    }
                })
                .collect();
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{}", c)?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", c, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_division() {
        let x = LaurentPoly::var_pow(2, 0, 1);
        let y = LaurentPoly::var_pow(2, 1, 1);
        let xi = LaurentPoly::var_pow(2, 0, -1);
        let a = x.add(&xi).add(&y);
        let b = x.sub(&y.pow(2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(x
            .add(&LaurentPoly::one(2))
            .div_exact(&y.add(&LaurentPoly::one(2)))
            .is_err());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation() {
        let p = LaurentPoly::from_terms(1, &[(&[1], 1), (&[-1], 1)]);
        assert_eq!(p.at_ones(), rat(2));
        assert_eq!(p.eval_rational(&[rat(2)]), BigRational::new(5.into(), 2.into()));
        let z = p.eval_complex(&[Complex64::new(0.0, 1.0)]);
        assert!(z.norm() < 1e-15);
    }
}
