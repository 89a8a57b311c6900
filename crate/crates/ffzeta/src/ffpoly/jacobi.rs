//! Jacobi symbol (r/f) over F_q[t] for odd q.

use super::field::{Elem, FieldCtx};
use super::poly::{self, PolyQ};
use super::FfError;

/// Reduce `a` modulo the monic `b` in place.
fn rem_monic(f: &FieldCtx, a: &mut Vec<Elem>, b: &[Elem]) {
    let db = b.len() - 1;
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            let off = top - db;
            for k in 0..db {
                a[off + k] = f.sub(a[off + k], f.mul(c, b[k]));
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

/// Euclid loop with reciprocity. `b` must be monic and nonempty.
pub(crate) fn jacobi_raw(f: &FieldCtx, r: &[Elem], b: &[Elem]) -> i8 {
    let minus_one_odd = f.chi(f.neg(1)) == -1;
    let mut a = r.to_vec();
    let mut b = b.to_vec();
    let mut sign = 1i8;
    rem_monic(f, &mut a, &b);
    loop {
        let db = b.len() - 1;
        if db == 0 {
            return sign;
        }
        let Some(&c) = a.last() else {
            return 0;
        };
        if c != 1 {
            if db % 2 == 1 {
                sign *= f.chi(c);
            }
            let inv = f.inv(c).unwrap();
            for x in a.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let da = a.len() - 1;
        if minus_one_odd && da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        rem_monic(f, &mut b, &a);
        std::mem::swap(&mut a, &mut b);
    }
}

/// The Jacobi symbol (r/f) for monic nonzero `f`.
pub fn jacobi_symbol(r: &PolyQ, f: &PolyQ) -> Result<i8, FfError> {
    if r.ctx() != f.ctx() {
        return Err(FfError::MixedContexts);
    }
    if !f.ctx().has_chi() {
        return Err(FfError::EvenCharacteristic);
    }
    if !f.is_monic() {
        return Err(FfError::NotMonic);
    }
    Ok(jacobi_raw(f.ctx(), r.coeffs(), f.coeffs()))
}

/// `r^{(|f|-1)/2} mod f` read as -1, 0 or 1. Meaningful for irreducible `f`;
/// returns `None` when the power is not a constant in {0, ±1}.
pub fn euler_criterion(r: &PolyQ, f: &PolyQ) -> Result<Option<i8>, FfError> {
    if !f.ctx().has_chi() {
        return Err(FfError::EvenCharacteristic);
    }
    if !f.is_monic() {
        return Err(FfError::NotMonic);
    }
    let ctx = f.ctx();
    let e = (f.norm().unwrap() - 1u32) / 2u32;
    let v = poly::powmod(ctx, &poly::rem(ctx, r.coeffs(), f.coeffs()), &e, f.coeffs());
    let red = poly::rem(ctx, r.coeffs(), f.coeffs());
    Ok(match v.as_slice() {
        _ if red.is_empty() => Some(0),
        [1] => Some(1),
        [x] if *x == ctx.neg(1) => Some(-1),
        _ => None,
    })
}
