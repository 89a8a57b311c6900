use num_complex::Complex64;

use crate::ffpoly::{factor_poly, jacobi_raw, Elem, FieldCtx, PolyQ};
use crate::lfunc::{
    invert_series, invert_series_normalized, power_sums, zero_angles, FamilyData, LPolynomial, DEFAULT_ZERO_TOL,
};

use super::kernel::{periodize, TestKernel};
use super::{chunked_int_sums, chunked_sum, StatsError};

/// Denominator shifts must satisfy `Re s ≥ 1/2 + margin`.
pub const DEFAULT_MARGIN: f64 = 0.05;
/// Smallest accepted `|L(s_k)|` in a denominator.
pub const DEFAULT_DENOMINATOR_GUARD: f64 = 1e-12;

/// `K` numerator shifts followed by `Q` denominator shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioSpec {
    pub k: usize,
    pub shifts: Vec<Complex64>,
    pub margin: f64,
}

impl RatioSpec {
    pub fn new(k: usize, q_count: usize, shifts: Vec<Complex64>) -> Result<Self, StatsError> {
        if shifts.len() != k + q_count {
            return Err(StatsError::Precondition(format!(
                "expected {} shifts, got {}",
                k + q_count,
                shifts.len()
            )));
        }
        Ok(RatioSpec {
            k,
            shifts,
            margin: DEFAULT_MARGIN,
        })
    }

    /// All shifts real and equal to `s`.
    pub fn uniform(k: usize, q_count: usize, s: f64) -> Self {
        RatioSpec {
            k,
            shifts: vec![Complex64::new(s, 0.0); k + q_count],
            margin: DEFAULT_MARGIN,
        }
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    pub fn q_count(&self) -> usize {
        self.shifts.len() - self.k
    }

    pub fn numerators(&self) -> &[Complex64] {
        &self.shifts[..self.k]
    }

    pub fn denominators(&self) -> &[Complex64] {
        &self.shifts[self.k..]
    }

    /// `x_u = -q^{1/2 - s_u}`.
    pub fn x(&self, q: u32) -> Vec<Complex64> {
        self.numerators().iter().map(|&s| -q_pow(q, 0.5 - s)).collect()
    }

    /// `y_v = q^{1/2 - s_{K+v}}`.
    pub fn y(&self, q: u32) -> Vec<Complex64> {
        self.denominators().iter().map(|&s| q_pow(q, 0.5 - s)).collect()
    }

    pub fn validate(&self) -> Result<(), StatsError> {
        for s in self.denominators() {
            if s.re < 0.5 + self.margin {
                return Err(StatsError::Precondition(format!(
                    "denominator shift {s} needs Re s >= {}",
                    0.5 + self.margin
                )));
            }
        }
        Ok(())
    }
}

/// `q^z` for complex `z`.
pub(crate) fn q_pow(q: u32, z: Complex64) -> Complex64 {
    (z * (q as f64).ln()).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Plain sum over the family.
    Sum,
    /// Divided by `q^n`.
    Normalized,
}

fn check_family(fam: &FamilyData) -> Result<(), StatsError> {
    if fam.is_empty() {
        return Err(StatsError::Precondition("empty family".into()));
    }
    Ok(())
}

fn q_to_n(fam: &FamilyData) -> f64 {
    (fam.q as f64).powi(fam.n as i32)
}

/// `Σ_d ∏ L(s_i, χ_d) / ∏ L(s_{K+j}, χ_d)` with `L` evaluated at `u = q^{-s}`.
pub fn ratio_average_empirical(
    fam: &FamilyData,
    spec: &RatioSpec,
    norm: Normalization,
    guard: f64,
) -> Result<Complex64, StatsError> {
    check_family(fam)?;
    spec.validate()?;
    let us: Vec<Complex64> = spec.shifts.iter().map(|&s| q_pow(fam.q, -s)).collect();
    let k = spec.k;
    let total = chunked_sum(fam.len(), |i| {
        let row = fam.row(i);
        let eval = |u: Complex64| {
            row.iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * u + a as f64)
        };
        let mut v = Complex64::new(1.0, 0.0);
        for &u in &us[..k] {
            v *= eval(u);
        }
        for &u in &us[k..] {
            let den = eval(u);
            if den.norm() < guard {
                return Err(StatsError::SmallDenominator {
                    index: fam.indices[i],
                    value: den.norm(),
                });
            }
            v /= den;
        }
        Ok(v)
    })?;
    Ok(match norm {
        Normalization::Sum => total,
        Normalization::Normalized => total / q_to_n(fam),
    })
}

/// Finite-`n` approximations to a coefficient limit, one per family.
#[derive(Clone, Debug, PartialEq)]
pub struct C5Estimate {
    pub ns: Vec<usize>,
    pub values: Vec<f64>,
    /// `|value_{i+1} - value_i|`.
    pub diffs: Vec<f64>,
}

/// `q^{-n} Σ_d ∏_{ε_i=+1} A_d(N_i) ∏_{ε_j=-1} (-1)^c w(d) A_d(N_j) ∏_k B_d(N_k)`
/// for each family, with `A_d`, `B_d` the normalized coefficients of the
/// completed polynomial and its reciprocal.
pub fn estimate_c5(fams: &[&FamilyData], eps: &[i8], nvec: &[usize]) -> Result<C5Estimate, StatsError> {
    let k = eps.len();
    if nvec.len() < k || eps.iter().any(|&e| e != 1 && e != -1) {
        return Err(StatsError::Precondition("sign vector and N vector do not match".into()));
    }
    let bmax = nvec[k..].iter().copied().max().unwrap_or(0);
    let mut ns = Vec::new();
    let mut values = Vec::new();
    for fam in fams {
        check_family(fam)?;
        let sq = (fam.q as f64).sqrt();
        let total = chunked_sum(fam.len(), |i| {
            let l = fam.completed(i)?;
            let a = |m: usize| l.coeff(m) as f64 / sq.powi(m as i32);
            let sign = if l.c % 2 == 0 { 1.0 } else { -1.0 } * l.w.unwrap_or(1) as f64;
            let mut v = 1.0;
            for (&e, &m) in eps.iter().zip(nvec) {
                v *= if e == 1 { a(m) } else { sign * a(m) };
            }
            if nvec.len() > k {
                let b = invert_series_normalized(&l, bmax);
                for &m in &nvec[k..] {
                    v *= b[m];
                }
            }
            Ok(Complex64::new(v, 0.0))
        })?;
        ns.push(fam.n);
        values.push(total.re / q_to_n(fam));
    }
    let diffs = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    Ok(C5Estimate { ns, values, diffs })
}

/// `Σ_{d ∈ P_n} b_d(R)` exactly, where `1/L̂ = Σ b(R) u^R`.
pub fn moebius_sum_exact(fam: &FamilyData, r: usize) -> Result<i128, StatsError> {
    check_family(fam)?;
    let s = chunked_int_sums(fam.len(), 1, |i, out| {
        let l = LPolynomial::from_parts(fam.q, Vec::new(), fam.row(i).to_vec());
        out[0] = invert_series(&l, r)?[r];
        Ok(())
    })?;
    Ok(s[0])
}

/// `(1/|P_n|) Σ_d q^{-R/2} b_d(R)`.
pub fn moebius_cancellation(fam: &FamilyData, r: usize) -> Result<f64, StatsError> {
    let s = moebius_sum_exact(fam, r)?;
    Ok(s as f64 / fam.len() as f64 / (fam.q as f64).powf(r as f64 / 2.0))
}

fn odd_conductor(fam: &FamilyData) -> Result<usize, StatsError> {
    if fam.n < 3 || fam.n.is_multiple_of(2) {
        return Err(StatsError::Precondition(format!(
            "n = {} must be odd and at least 3",
            fam.n
        )));
    }
    Ok(fam.n - 1)
}

/// One-level density: `(1/|P_n|) Σ_d Σ_j F(θ_j/log q; n)` and the reference
/// `∫ (1 - sin(2πx)/(2πx)) f(x) dx`. The inner sum is expanded by Poisson
/// summation into eigenvalue power sums, which are exact integers.
pub fn one_level_density(fam: &FamilyData, kernel: &TestKernel) -> Result<(f64, f64), StatsError> {
    check_family(fam)?;
    let c = odd_conductor(fam)?;
    let t = c as f64;
    let mmax = (kernel.lambda * t).floor() as usize;
    let sums = chunked_int_sums(fam.len(), mmax, |i, out| {
        out.copy_from_slice(&power_sums(fam.row(i), mmax));
        Ok(())
    })?;
    let sq = (fam.q as f64).sqrt();
    let size = fam.len() as f64;
    let mut acc = c as f64 * kernel.g(0.0);
    for (m, &s) in (1..=mmax).zip(&sums) {
        // Σ_j cos(m θ_j) = -q^{-m/2} P_m
        let mean_cos = -(s as f64) / size / sq.powi(m as i32);
        acc += 2.0 * kernel.g(m as f64 / t) * mean_cos;
    }
    Ok((acc / t, kernel.reference()))
}

/// The same statistic from numerically located zeros.
pub fn one_level_density_direct(fam: &FamilyData, kernel: &TestKernel) -> Result<f64, StatsError> {
    check_family(fam)?;
    odd_conductor(fam)?;
    let logq = (fam.q as f64).ln();
    let total = chunked_sum(fam.len(), |i| {
        let zs = zero_angles(&fam.completed(i)?, DEFAULT_ZERO_TOL)?;
        let mut v = 0.0;
        for &th in &zs.angles {
            v += periodize(kernel, fam.q, fam.n, th / logq)?.value;
        }
        Ok(Complex64::new(v, 0.0))
    })?;
    Ok(total.re / fam.len() as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AverageCharResult {
    pub ns: Vec<usize>,
    pub empirical: Vec<f64>,
    /// `(1 - 1/q) ∏_{P | r} (1 + |P|^{-1})^{-1}` for square `r`, else 0.
    pub model: f64,
}

/// `q^{-n} Σ_{d ∈ P_n} χ_d(r)` for each family, next to the model value.
pub fn average_char(fams: &[&FamilyData], r: &PolyQ) -> Result<AverageCharResult, StatsError> {
    if !r.is_monic() {
        return Err(StatsError::Precondition("r must be monic".into()));
    }
    let ctx: &FieldCtx = r.ctx();
    let q = ctx.order();
    let fac = factor_poly(r)?;
    let model = if fac.factors.iter().all(|(_, m)| m % 2 == 0) {
        fac.factors.iter().fold(1.0 - 1.0 / q as f64, |acc, (p, _)| {
            let norm = (q as f64).powi(p.degree().unwrap_or(0) as i32);
            acc / (1.0 + 1.0 / norm)
        })
    } else {
        0.0
    };
    let mut ns = Vec::new();
    let mut empirical = Vec::new();
    for fam in fams {
        check_family(fam)?;
        if fam.q != q {
            return Err(StatsError::Precondition("field of r differs from the family".into()));
        }
        let s = chunked_int_sums(fam.len(), 1, |i, out| {
            let mut d: Vec<Elem> = fam.digits(i).into_iter().rev().collect();
            d.push(1);
            out[0] = jacobi_raw(ctx, r.coeffs(), &d) as i128;
            Ok(())
        })?;
        ns.push(fam.n);
        empirical.push(s[0] as f64 / q_to_n(fam));
    }
    Ok(AverageCharResult { ns, empirical, model })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::Method;

    fn fam(q: u32, n: usize) -> FamilyData {
        FamilyData::compute(q, n, Method::Auto, 1).unwrap()
    }

    #[test]
    fn empty_ratio_counts_family() {
        let f = fam(3, 5);
        let v = ratio_average_empirical(&f, &RatioSpec::uniform(0, 0, 0.0), Normalization::Normalized, 1e-12).unwrap();
        assert_eq!(v, Complex64::new(2.0 / 3.0, 0.0));
        let bad = RatioSpec::uniform(0, 1, 0.5);
        assert!(ratio_average_empirical(&f, &bad, Normalization::Normalized, 1e-12).is_err());
    }

    #[test]
    fn moebius_trivial_degree() {
        let f = fam(3, 5);
        assert_eq!(moebius_cancellation(&f, 0).unwrap(), 1.0);
    }

    #[test]
    fn c5_empty_and_unit() {
        let f5 = fam(3, 5);
        let f7 = fam(3, 7);
        let e = estimate_c5(&[&f5, &f7], &[], &[]).unwrap();
        assert!(e.values.iter().all(|&v| v == 2.0 / 3.0));
        let e = estimate_c5(&[&f5], &[], &[0]).unwrap();
        assert_eq!(e.values[0], 2.0 / 3.0);
    }

    #[test]
    fn density_matches_zero_route() {
        let f = fam(3, 5);
        let k = TestKernel::triangle(1.0).unwrap();
        let (emp, reference) = one_level_density(&f, &k).unwrap();
        let direct = one_level_density_direct(&f, &k).unwrap();
        assert!((emp - direct).abs() < 1e-9, "{emp} {direct}");
        assert_eq!(reference, 0.5);
    }

    #[test]
    fn average_char_examples() {
        let ctx = FieldCtx::prime(3).unwrap();
        let f5 = fam(3, 5);
        let one = PolyQ::one(&ctx);
        let r = average_char(&[&f5], &one).unwrap();
        assert_eq!(r.empirical[0], 2.0 / 3.0);
        let t2 = PolyQ::from_ints(&ctx, &[0, 0, 1]);
        let r = average_char(&[&f5], &t2).unwrap();
        assert!((r.model - 0.5).abs() < 1e-15);
        assert_eq!(average_char(&[&f5], &PolyQ::t(&ctx)).unwrap().model, 0.0);
    }
}
