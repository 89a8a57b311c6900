//! Reciprocal series and eigenvalue power sums.

use super::lpoly::LPolynomial;
use super::LfError;

/// Coefficients `b(0..=r_max)` of `1 / L̂(u)` as exact integers.
pub fn invert_series(l: &LPolynomial, r_max: usize) -> Result<Vec<i128>, LfError> {
    if l.coeff(0) != 1 {
        return Err(LfError::BadConstantTerm);
    }
    let mut b: Vec<i128> = Vec::with_capacity(r_max + 1);
    b.push(1);
    for r in 1..=r_max {
        let mut acc: i128 = 0;
        for k in 1..=r.min(l.lhat.len() - 1) {
            let term = (l.lhat[k] as i128).checked_mul(b[r - k]).ok_or(LfError::Overflow)?;
            acc = acc.checked_sub(term).ok_or(LfError::Overflow)?;
        }
        b.push(acc);
    }
    Ok(b)
}

/// Normalized coefficients `B(N) = b(N) q^{-N/2}` in floating point.
pub fn invert_series_normalized(l: &LPolynomial, r_max: usize) -> Vec<f64> {
    let sq = (l.q as f64).sqrt();
    let a: Vec<f64> = l
        .lhat
        .iter()
        .enumerate()
        .map(|(k, &x)| x as f64 / sq.powi(k as i32))
        .collect();
    let mut b = vec![1.0f64];
    for r in 1..=r_max {
        let acc: f64 = (1..=r.min(a.len() - 1)).map(|k| a[k] * b[r - k]).sum();
        b.push(-acc);
    }
    b
}

/// Twisted point-count sums `P_m = -Σ β_i^m` for `m = 1..=m_max` recovered from
/// the coefficients by Newton's identities.
pub fn power_sums(lhat: &[i64], m_max: usize) -> Vec<i128> {
    let a = |k: usize| -> i128 { lhat.get(k).copied().unwrap_or(0) as i128 };
    let mut p: Vec<i128> = Vec::with_capacity(m_max);
    for k in 1..=m_max {
        let mut v = k as i128 * a(k);
        for j in 1..k {
            v -= p[j - 1] * a(k - j);
        }
        p.push(v);
    }
    p
}

/// `Σ_j cos(m θ_j) = -q^{-m/2} P_m` for `m = 1..=m_max`, without root finding.
pub fn angle_cosine_sums(q: u32, lhat: &[i64], m_max: usize) -> Vec<f64> {
    let sq = (q as f64).sqrt();
    power_sums(lhat, m_max)
        .into_iter()
        .enumerate()
        .map(|(i, p)| -(p as f64) / sq.powi(i as i32 + 1))
        .collect()
}
