//! Zero angles of completed L-polynomials.
//!
//! The polynomial is first split exactly into square-free factors so repeated
//! zeros do not degrade accuracy, then each factor is solved through the
//! eigenvalues of its companion matrix in the variable `v = q^{1/2} u`,
//! followed by Newton polishing.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lpoly::LPolynomial;
use super::LfError;

/// Default residual tolerance on `|u_j| - q^{-1/2}`.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Angles `θ_j ∈ (-π, π]` with roots `u_j = q^{-1/2} e^{-iθ_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub angles: Vec<f64>,
    /// Largest observed `| |u_j| q^{1/2} - 1 |`.
    pub tolerance: f64,
}

const GCD_PRIME: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % GCD_PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(f, f')` modulo a large prime; zero certifies square-freeness
/// over Q when the leading coefficient survives reduction.
fn gcd_degree_mod_prime(coeffs: &[i64]) -> usize {
    let red = |x: i64| x.rem_euclid(GCD_PRIME as i64) as u64;
    let mut a: Vec<u64> = coeffs.iter().map(|&x| red(x)).collect();
    let mut b: Vec<u64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &x)| mulmod(red(x), i as u64))
        .collect();
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), GCD_PRIME - 2);
        while a.len() >= b.len() {
            let c = mulmod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (k, &y) in b.iter().enumerate() {
                a[off + k] = (a[off + k] + GCD_PRIME - mulmod(c, y)) % GCD_PRIME;
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

type RPoly = Vec<BigRational>;

fn rtrim(mut v: RPoly) -> RPoly {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn rdivrem(a: &RPoly, b: &RPoly) -> (RPoly, RPoly) {
    let mut r = a.clone();
    if a.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &r[i + b.len() - 1] / &lead;
        for (k, y) in b.iter().enumerate() {
            r[i + k] = &r[i + k] - &c * y;
        }
        q[i] = c;
    }
    r.truncate(b.len() - 1);
    (rtrim(q), rtrim(r))
}

fn rmonic(a: RPoly) -> RPoly {
    let lead = a.last().unwrap().clone();
    a.into_iter().map(|x| x / &lead).collect()
}

fn rgcd(a: &RPoly, b: &RPoly) -> RPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rdivrem(&x, &y).1;
        x = y;
        y = r;
    }
    rmonic(x)
}

/// Yun's square-free decomposition over Q: pairs (factor, multiplicity).
fn yun(coeffs: &[i64]) -> Vec<(RPoly, usize)> {
    let f: RPoly = coeffs
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    let deriv = |p: &RPoly| -> RPoly {
        rtrim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    };
    let mut out = Vec::new();
    let a0 = rgcd(&f, &deriv(&f));
    let mut b = rdivrem(&f, &a0).0;
    let mut c = rdivrem(&deriv(&f), &a0).0;
    let mut d = rtrim(
        (0..c.len().max(b.len()))
            .map(|k| {
                c.get(k).cloned().unwrap_or_else(BigRational::zero)
                    - deriv(&b).get(k).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    );
    let mut i = 1;
    while b.len() > 1 {
        let a = rgcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = rdivrem(&b, &a).0;
        c = rdivrem(&d, &a).0;
        let db = deriv(&b);
        d = rtrim(
            (0..c.len().max(db.len()))
                .map(|k| {
                    c.get(k).cloned().unwrap_or_else(BigRational::zero)
                        - db.get(k).cloned().unwrap_or_else(BigRational::zero)
                })
                .collect(),
        );
        i += 1;
    }
    out
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a real polynomial (low first, nonzero leading term).
fn real_poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -monic[i];
    }
    let eig: Vec<Complex64> = match m.try_schur(f64::EPSILON, 10_000) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => aberth(&monic),
    };
    eig.iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..3 {
                let (p, dp) = horner(&monic, z);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                if !step.re.is_finite() || !step.im.is_finite() {
                    break;
                }
                z -= step;
            }
            z
        })
        .collect()
}

/// Simultaneous Aberth iteration for a monic polynomial; used when the QR
/// iteration on the companion matrix stalls (e.g. `v^4 + 1`).
fn aberth(monic: &[f64]) -> Vec<Complex64> {
    let deg = monic.len() - 1;
    let radius = monic[..deg].iter().map(|c| c.abs()).fold(0.0, f64::max) + 1.0;
    let r0 = radius.min(2.0);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (p, dp) = horner(monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulse: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulse);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let s = if x.is_negative() { -1.0 } else { 1.0 };
        s * f64::INFINITY
    })
}

/// Zeros in the scaled variable `v = q^{1/2} u`, with multiplicity.
pub(crate) fn scaled_roots(q: u32, lhat: &[i64]) -> Vec<Complex64> {
    let sq = (q as f64).sqrt();
    let scale = |c: &[f64]| -> Vec<f64> { c.iter().enumerate().map(|(k, &x)| x / sq.powi(k as i32)).collect() };
    let deg = lhat.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if gcd_degree_mod_prime(lhat) == 0 {
        let c: Vec<f64> = lhat.iter().map(|&x| x as f64).collect();
        return real_poly_roots(&scale(&c));
    }
    let mut out = Vec::with_capacity(deg);
    for (factor, mult) in yun(lhat) {
        let c: Vec<f64> = factor.iter().map(rat_to_f64).collect();
        for r in real_poly_roots(&scale(&c)) {
            for _ in 0..mult {
                out.push(r);
            }
        }
    }
    out
}

/// Match `θ` with `-θ`; real zeros (`θ = 0` or `π`) must come in even number.
fn pair_conjugates(thetas: Vec<f64>) -> Result<Vec<f64>, LfError> {
    use std::f64::consts::PI;
    const EPS: f64 = 1e-7;
    let (mut pos, mut neg, mut zero, mut pi) = (Vec::new(), Vec::new(), 0usize, 0usize);
    for t in thetas {
        if t.abs() < EPS {
            zero += 1;
        } else if t.abs() > PI - EPS {
            pi += 1;
        } else if t > 0.0 {
            pos.push(t);
        } else {
            neg.push(-t);
        }
    }
    if pos.len() != neg.len() || zero % 2 == 1 || pi % 2 == 1 {
        return Err(LfError::Unpaired);
    }
    pos.sort_by(f64::total_cmp);
    neg.sort_by(f64::total_cmp);
    let mut angles = vec![0.0; zero];
    angles.extend(std::iter::repeat_n(PI, pi));
    for (a, b) in pos.iter().zip(&neg) {
        if (a - b).abs() > 1e-6 {
            return Err(LfError::Unpaired);
        }
        let m = 0.5 * (a + b);
        angles.extend([-m, m]);
    }
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

/// Zero angles of a completed, functional-equation-checked polynomial.
pub fn zero_angles(l: &LPolynomial, tol: f64) -> Result<ZeroSet, LfError> {
    if !l.completed {
        return Err(LfError::NotCompleted);
    }
    if l.w.is_none() {
        return Err(LfError::NotVerified);
    }
    let coeffs = &l.lhat[..=l.c];
    let roots = scaled_roots(l.q, coeffs);
    let mut worst = 0.0f64;
    let mut thetas = Vec::with_capacity(roots.len());
    for v in &roots {
        let dev = (v.norm() - 1.0).abs();
        worst = worst.max(dev);
        if dev > tol {
            return Err(LfError::OffCircle { deviation: dev });
        }
        thetas.push(-v.arg());
    }
    let angles = pair_conjugates(thetas)?;
    Ok(ZeroSet {
        angles,
        tolerance: worst,
    })
}

impl ZeroSet {
    /// `∏ (1 + x e^{iθ})`.
    pub fn eval_product(&self, x: Complex64) -> Complex64 {
        self.angles.iter().fold(Complex64::one(), |acc, &t| {
            acc * (Complex64::one() + x * Complex64::from_polar(1.0, t))
        })
    }
}
