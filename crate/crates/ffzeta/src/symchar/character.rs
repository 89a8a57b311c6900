//! Schur and symplectic characters.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::laurent::{rat, Exps, LaurentPoly};
use super::partition::Partition;
use super::SymError;

/// Determinant by cofactor expansion with memoized minors.
pub(crate) fn det(m: &[Vec<LaurentPoly>], nvars: usize) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(nvars);
    }
    fn minor(m: &[Vec<LaurentPoly>], mask: u32, memo: &mut HashMap<u32, LaurentPoly>, nvars: usize) -> LaurentPoly {
        let n = m.len();
        let row = n - mask.count_ones() as usize;
        if row == n {
            return LaurentPoly::one(nvars);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(nvars);
        let mut sign = 1i64;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let sub = minor(m, mask & !(1 << col), memo, nvars);
                if !sub.is_zero() {
                    acc.add_assign(&m[row][col].mul(&sub).scale(&rat(sign)));
                }
            }
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    minor(m, (1u32 << n) - 1, &mut HashMap::new(), nvars)
}

/// `h_0..=h_kmax` over an alphabet of monomials in `nvars` variables.
pub(crate) fn complete_homogeneous(alphabet: &[Exps], nvars: usize, kmax: usize) -> Vec<LaurentPoly> {
    let mut h: Vec<LaurentPoly> = (0..=kmax)
        .map(|k| {
            if k == 0 {
                LaurentPoly::one(nvars)
            } else {
                LaurentPoly::zero(nvars)
            }
        })
        .collect();
    for letter in alphabet {
        let mut next = h.clone();
        for k in 1..=kmax {
            // next[k] = Σ_{i≥1} letter^i h[k-i] = letter · next[k-1] + h[k]
            let shifted: Exps = letter.clone();
            let add = next[k - 1].shift(&shifted, &rat(1));
            next[k] = h[k].add(&add);
        }
        h = next;
    }
    h
}

fn plain_alphabet(m: usize) -> Vec<Exps> {
    (0..m)
        .map(|i| {
            let mut v = vec![0; m];
            v[i] = 1;
            v
        })
        .collect()
}

fn symplectic_alphabet(m: usize) -> Vec<Exps> {
    let mut out = plain_alphabet(m);
    out.extend(
        plain_alphabet(m)
            .into_iter()
            .map(|v| v.into_iter().map(|e| -e).collect()),
    );
    out
}

fn h_at(h: &[LaurentPoly], k: i64, nvars: usize) -> LaurentPoly {
    if k < 0 {
        LaurentPoly::zero(nvars)
    } else {
        h[k as usize].clone()
    }
}

/// Schur polynomial `s_λ(x_1..x_m)` by Jacobi–Trudi.
pub fn schur_poly(l: &Partition, m: usize) -> LaurentPoly {
    if l.len() > m {
        return LaurentPoly::zero(m);
    }
    let n = l.len();
    let kmax = (l.part(0) as usize) + n;
    let h = complete_homogeneous(&plain_alphabet(m), m, kmax);
    let mat: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| h_at(&h, l.part(i) as i64 - i as i64 + j as i64, m))
                .collect()
        })
        .collect();
    det(&mat, m)
}

/// Symplectic character by the Koike–Terada determinant in `h_k(x^{±1})`.
pub fn sp_character_jt(l: &Partition, m: usize) -> LaurentPoly {
    if l.len() > m {
        return LaurentPoly::zero(m);
    }
    let n = l.len();
    let kmax = (l.part(0) as usize) + n;
    let h = complete_homogeneous(&symplectic_alphabet(m), m, kmax);
    let mat: Vec<Vec<LaurentPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = l.part(i) as i64 - i as i64;
                    if j == 0 {
                        h_at(&h, base, m)
                    } else {
                        // 0-based j: h_{λ_i-i+j} + h_{λ_i-i-j}
                        h_at(&h, base + j as i64, m).add(&h_at(&h, base - j as i64, m))
                    }
                })
                .collect()
        })
        .collect();
    det(&mat, m)
}

fn antisym_det(exponents: &[i32], m: usize) -> LaurentPoly {
    let mat: Vec<Vec<LaurentPoly>> = exponents
        .iter()
        .map(|&a| {
            (0..m)
                .map(|j| LaurentPoly::var_pow(m, j, a).sub(&LaurentPoly::var_pow(m, j, -a)))
                .collect()
        })
        .collect();
    det(&mat, m)
}

/// Symplectic character by the Weyl ratio, computed through exact division.
pub fn sp_character_weyl(l: &Partition, m: usize) -> Result<LaurentPoly, SymError> {
    if l.len() > m {
        return Ok(LaurentPoly::zero(m));
    }
    let num: Vec<i32> = (0..m).map(|i| l.part(i) as i32 + (m - i) as i32).collect();
    let den: Vec<i32> = (0..m).map(|i| (m - i) as i32).collect();
    antisym_det(&num, m).div_exact(&antisym_det(&den, m))
}

/// Symplectic character of Sp(2m); both formulas are evaluated once per
/// `(λ, m)` and must agree.
pub fn sp_character(l: &Partition, m: usize) -> Result<LaurentPoly, SymError> {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, usize), LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (l.clone(), m);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let jt = sp_character_jt(l, m);
    let weyl = sp_character_weyl(l, m)?;
    if jt != weyl {
        return Err(SymError::CharacterMismatch(l.clone(), m));
    }
    if !jt.is_nonneg_integral() {
        return Err(SymError::NegativeCoefficient(l.clone(), m));
    }
    cache.lock().unwrap().insert(key, jt.clone());
    Ok(jt)
}

/// `D_K = ∏_{i<j} (x_i - x_j)(x_i x_j - 1) ∏_i (1 - x_i²)`.
pub fn weyl_denominator(k: usize) -> LaurentPoly {
    let x = |i: usize, e: i32| LaurentPoly::var_pow(k, i, e);
    let one = LaurentPoly::one(k);
    let mut acc = one.clone();
    for i in 0..k {
        for j in i + 1..k {
            acc = acc.mul(&x(i, 1).sub(&x(j, 1)));
            acc = acc.mul(&x(i, 1).mul(&x(j, 1)).sub(&one));
        }
        acc = acc.mul(&one.sub(&x(i, 2)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn schur_examples() {
        let s = schur_poly(&p(&[1]), 2);
        assert_eq!(s, LaurentPoly::from_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(schur_poly(&p(&[1, 1]), 2), LaurentPoly::from_terms(2, &[(&[1, 1], 1)]));
        assert_eq!(schur_poly(&p(&[2, 1]), 3).at_ones(), rat(8));
        assert!(schur_poly(&p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn symplectic_examples() {
        let s = sp_character(&p(&[1]), 1).unwrap();
        assert_eq!(s, LaurentPoly::from_terms(1, &[(&[1], 1), (&[-1], 1)]));
        assert_eq!(sp_character(&Partition::empty(), 3).unwrap(), LaurentPoly::one(3));
        assert_eq!(sp_character(&p(&[1, 1]), 2).unwrap().at_ones(), rat(5));
        assert!(sp_character(&p(&[1, 1, 1]), 2).unwrap().is_zero());
    }

    #[test]
    fn denominators() {
        assert_eq!(weyl_denominator(0), LaurentPoly::one(0));
        assert_eq!(
            weyl_denominator(1),
            LaurentPoly::from_terms(1, &[(&[0], 1), (&[2], -1)])
        );
        let d2 = weyl_denominator(2);
        assert_eq!(d2.num_terms(), 8);
    }
}
