//! Finite fields F_{p^j} with elements encoded as integers.
//!
//! An element of F_{p^j} = F_p[t]/(m(t)) is stored as `Σ c_i p^i`, where
//! `c_i` is the coefficient of `t^i`. Prime fields use residues directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::poly;
use super::FfError;

/// Field element encoded as an integer index in `0..order`.
pub type Elem = u32;

/// Default cap on `p^j`.
pub const DEFAULT_ORDER_BOUND: u64 = 1_000_000;

struct Inner {
    p: u32,
    j: u32,
    order: u32,
    modulus: Option<Vec<Elem>>,
    // log/exp with respect to a primitive element (extension fields only)
    exp: Vec<u32>,
    log: Vec<u32>,
    // quadratic character, odd characteristic only
    chi: Vec<i8>,
}

/// Shared handle to a finite field. Cheap to clone.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.j == other.0.j)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.order)?;
        if let Some(m) = &self.0.modulus {
            write!(f, " (modulus {:?})", m)?;
        }
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Field of order `p^j` with the default order bound.
    pub fn new(p: u32, j: u32) -> Result<Self, FfError> {
        Self::with_bound(p, j, DEFAULT_ORDER_BOUND)
    }

    /// Prime field F_p.
    pub fn prime(p: u32) -> Result<Self, FfError> {
        Self::new(p, 1)
    }

    pub fn with_bound(p: u32, j: u32, bound: u64) -> Result<Self, FfError> {
        if !is_prime(p as u64) {
            return Err(FfError::NotPrime(p as u64));
        }
        if j < 1 {
            return Err(FfError::BadExtensionDegree(j));
        }
        let order = (p as u64)
            .checked_pow(j)
            .filter(|&o| o <= bound && o <= u32::MAX as u64)
            .ok_or(FfError::OrderTooLarge { p, j, bound })?;
        let order = order as u32;
        if j == 1 {
            let mut chi = Vec::new();
            if p != 2 {
                chi = vec![-1i8; p as usize];
                chi[0] = 0;
                for x in 1..p as u64 {
                    chi[(x * x % p as u64) as usize] = 1;
                }
            }
            return Ok(FieldCtx(Arc::new(Inner {
                p,
                j,
                order,
                modulus: None,
                exp: Vec::new(),
                log: Vec::new(),
                chi,
            })));
        }

        let base = FieldCtx::prime(p)?;
        let modulus = least_irreducible(&base, j as usize);
        let (exp, log) = log_tables(&base, &modulus, order);
        let mut chi = Vec::new();
        if p != 2 {
            chi = vec![0i8; order as usize];
            for x in 1..order as usize {
                chi[x] = if log[x] % 2 == 0 { 1 } else { -1 };
            }
        }
        Ok(FieldCtx(Arc::new(Inner {
            p,
            j,
            order,
            modulus: Some(modulus),
            exp,
            log,
            chi,
        })))
    }

    /// Shared instance per `(p, j)`, built once per process.
    pub fn cached(p: u32, j: u32) -> Result<Self, FfError> {
        static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldCtx>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(p, j)) {
            return Ok(f.clone());
        }
        let f = FieldCtx::new(p, j)?;
        cache.lock().unwrap().insert((p, j), f.clone());
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn j(&self) -> u32 {
        self.0.j
    }

    /// Number of elements `p^j`.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.j == 1
    }

    /// Defining polynomial over F_p, low degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[Elem]> {
        self.0.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p;
        if self.0.j == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let s = (a % p + b % p) % p;
            out += s * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.p;
        if self.0.j == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if self.0.j == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.order - 1;
        let mut e = self.0.log[a as usize] + self.0.log[b as usize];
        if e >= n {
            e -= n;
        }
        self.0.exp[e as usize]
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        if self.0.j == 1 {
            return Some(self.pow(a, self.0.p as u64 - 2));
        }
        let n = self.0.order - 1;
        let l = self.0.log[a as usize];
        Some(self.0.exp[((n - l) % n) as usize])
    }

    /// Reduce an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.0.p as i64) as Elem
    }

    /// Quadratic character: 0, +1 or -1. Odd characteristic only.
    #[inline]
    pub fn chi(&self, a: Elem) -> i8 {
        self.0.chi[a as usize]
    }

    pub fn has_chi(&self) -> bool {
        !self.0.chi.is_empty()
    }

    /// Discrete logarithm with respect to the table generator (extension fields).
    pub(crate) fn log_table(&self) -> Option<(&[u32], &[u32])> {
        if self.0.j == 1 {
            None
        } else {
            Some((&self.0.log, &self.0.exp))
        }
    }
}

/// Multiply two residues mod `m` (monic, low first) over F_p.
fn mulmod_digits(base: &FieldCtx, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let prod = poly::mul(base, a, b);
    poly::rem(base, &prod, m)
}

fn digits(mut x: u32, p: u32, j: usize) -> Vec<Elem> {
    let mut v = vec![0; j];
    for d in v.iter_mut() {
        *d = x % p;
        x /= p;
    }
    poly::trimmed(v)
}

fn undigits(v: &[Elem], p: u32) -> u32 {
    v.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Lexicographically least monic irreducible of degree `j` over the prime field,
/// ordered on (a_1, ..., a_j) for t^j + a_1 t^{j-1} + ... + a_j.
pub(crate) fn least_irreducible(base: &FieldCtx, j: usize) -> Vec<Elem> {
    let p = base.p() as u64;
    let total = p.pow(j as u32);
    for idx in 0..total {
        let f = super::enumerate::monic_from_index(base.p(), j, idx);
        if poly::is_irreducible(base, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn log_tables(base: &FieldCtx, modulus: &[Elem], order: u32) -> (Vec<u32>, Vec<u32>) {
    let p = base.p();
    let j = modulus.len() - 1;
    let n = (order - 1) as u64;
    let factors = prime_factors(n);
    let pow_elem = |g: &[Elem], e: u64| -> Vec<Elem> {
        let mut acc = vec![1];
        let mut b = g.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod_digits(base, &acc, &b, modulus);
            }
            b = mulmod_digits(base, &b, &b, modulus);
            e >>= 1;
        }
        acc
    };
    let gen = (2..order)
        .map(|x| digits(x, p, j))
        .find(|g| factors.iter().all(|&r| pow_elem(g, n / r) != vec![1]))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; order as usize];
    let mut cur = vec![1];
    for (k, slot) in exp.iter_mut().enumerate() {
        let idx = undigits(&cur, p);
        *slot = idx;
        log[idx as usize] = k as u32;
        cur = mulmod_digits(base, &cur, &gen, modulus);
    }
    (exp, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FieldCtx) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn prime_field_of_order_three() {
        let f = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f.order(), 3);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.modulus().unwrap(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldCtx::new(4, 1), Err(FfError::NotPrime(4))));
        assert!(matches!(FieldCtx::new(3, 0), Err(FfError::BadExtensionDegree(0))));
        assert!(matches!(FieldCtx::new(3, 13), Err(FfError::OrderTooLarge { .. })));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, j) in [
            (2, 1),
            (3, 1),
            (5, 1),
            (7, 1),
            (2, 2),
            (2, 3),
            (3, 2),
            (3, 3),
            (3, 4),
            (5, 2),
            (2, 6),
        ] {
            let f = FieldCtx::new(p, j).unwrap();
            if f.order() <= 81 {
                check_axioms(&f);
            }
        }
    }

    #[test]
    fn quadratic_character_counts() {
        for (p, j) in [(3, 1), (5, 1), (3, 2), (5, 2), (3, 3)] {
            let f = FieldCtx::new(p, j).unwrap();
            let s: i32 = (0..f.order()).map(|a| f.chi(a) as i32).sum();
            assert_eq!(s, 0);
            for a in 1..f.order() {
                assert_eq!(f.chi(f.mul(a, a)), 1);
            }
        }
    }
}
