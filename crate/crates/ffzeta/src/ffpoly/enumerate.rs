//! The family of square-free monic polynomials of a given degree.

use super::field::{Elem, FieldCtx};
use super::poly::{self, PolyQ};
use super::FfError;

/// Coefficients (low first) of the monic polynomial of degree `n` whose digit
/// tuple (a_1, ..., a_n) is the base-`q` expansion of `idx`, a_1 most significant.
pub fn monic_from_index(q: u32, n: usize, mut idx: u64) -> Vec<Elem> {
    let mut v = vec![0; n + 1];
    v[n] = 1;
    for slot in v.iter_mut().take(n) {
        *slot = (idx % q as u64) as Elem;
        idx /= q as u64;
    }
    v
}

/// `gcd(f, f') = 1` on raw coefficients; constants count as square-free.
pub(crate) fn squarefree_raw(f: &FieldCtx, a: &[Elem]) -> bool {
    if a.len() <= 1 {
        return true;
    }
    let d = poly::derivative(f, a);
    // f' = 0 makes the gcd f itself, which has positive degree
    poly::gcd(f, a, &d).len() == 1
}

pub fn is_squarefree(f: &PolyQ) -> Result<bool, FfError> {
    if f.is_zero() {
        return Err(FfError::ZeroPolynomial);
    }
    Ok(squarefree_raw(f.ctx(), f.coeffs()))
}

/// `q^n - q^{n-1}` for `n ≥ 2`, `q` for `n = 1`.
pub fn family_size(q: u64, n: usize) -> u64 {
    match n {
        0 => 1,
        1 => q,
        _ => q.pow(n as u32) - q.pow(n as u32 - 1),
    }
}

/// `gcd(f, f') = 1` over F_p with reusable buffers; `inv` maps residues to inverses.
fn squarefree_prime(p: u32, inv: &[u32], f: &[Elem], a: &mut Vec<u32>, b: &mut Vec<u32>) -> bool {
    if f.len() <= 1 {
        return true;
    }
    a.clear();
    a.extend_from_slice(f);
    b.clear();
    b.extend(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u64 * c as u64) % p as u64) as u32),
    );
    while b.last() == Some(&0) {
        b.pop();
    }
    while !b.is_empty() {
        let lead_inv = inv[*b.last().unwrap() as usize] as u64;
        while a.len() >= b.len() {
            let c = (*a.last().unwrap() as u64 * lead_inv) % p as u64;
            let off = a.len() - b.len();
            for (k, &y) in b.iter().enumerate() {
                let t = (c * y as u64) % p as u64;
                a[off + k] = ((a[off + k] as u64 + p as u64 - t) % p as u64) as u32;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(a, b);
    }
    a.len() == 1
}

/// Stream of square-free monic polynomials of degree `n` in digit order.
pub struct SquarefreeMonic {
    ctx: FieldCtx,
    n: usize,
    next: u64,
    end: u64,
    // candidate at index `next`, low coefficient first; empty until positioned
    cur: Vec<Elem>,
    inv: Vec<u32>,
    scratch: (Vec<u32>, Vec<u32>),
}

impl SquarefreeMonic {
    /// Restrict to the digit indices `start..end`.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.next = start;
        self.end = end.min(self.end);
        self.cur.clear();
        self
    }

    fn advance(&mut self) {
        let q = self.ctx.order();
        for c in self.cur.iter_mut().take(self.n) {
            *c += 1;
            if *c < q {
                return;
            }
            *c = 0;
        }
    }

    fn candidate_is_squarefree(&mut self) -> bool {
        if self.inv.is_empty() {
            return squarefree_raw(&self.ctx, &self.cur);
        }
        let (a, b) = &mut self.scratch;
        squarefree_prime(self.ctx.p(), &self.inv, &self.cur, a, b)
    }
}

impl Iterator for SquarefreeMonic {
    type Item = PolyQ;

    fn next(&mut self) -> Option<PolyQ> {
        while self.next < self.end {
            if self.cur.is_empty() {
                self.cur = monic_from_index(self.ctx.order(), self.n, self.next);
            }
            let hit = self.candidate_is_squarefree();
            let out = hit.then(|| PolyQ::new(&self.ctx, self.cur.clone()));
            self.next += 1;
            self.advance();
            if out.is_some() {
                return out;
            }
        }
        None
    }
}

pub fn enumerate_squarefree_monic(ctx: &FieldCtx, n: usize) -> Result<SquarefreeMonic, FfError> {
    if n < 1 {
        return Err(FfError::BadDegree(n));
    }
    let inv = if ctx.is_prime_field() {
        let p = ctx.p();
        (0..p).map(|x| if x == 0 { 0 } else { ctx.inv(x).unwrap() }).collect()
    } else {
        Vec::new()
    };
    Ok(SquarefreeMonic {
        ctx: ctx.clone(),
        n,
        next: 0,
        end: (ctx.order() as u64).pow(n as u32),
        cur: Vec::new(),
        inv,
        scratch: (Vec::new(), Vec::new()),
    })
}
