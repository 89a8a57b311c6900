use std::f64::consts::PI;
use std::str::FromStr;

use super::StatsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelShape {
    /// `g(ξ) = max(0, 1 - |ξ|/λ)`.
    Triangle,
    /// `g(ξ) = (1 + cos(πξ/λ))/2` on `[-λ, λ]`.
    RaisedCosine,
}

impl FromStr for KernelShape {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<Self, StatsError> {
        match s {
            "triangle" => Ok(KernelShape::Triangle),
            "raised-cosine" | "cosine" => Ok(KernelShape::RaisedCosine),
            _ => Err(StatsError::Precondition(format!("unknown kernel {s}"))),
        }
    }
}

/// Even test function `f` with Fourier transform `g` supported in `[-λ, λ]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestKernel {
    pub shape: KernelShape,
    pub lambda: f64,
}

fn sinc(y: f64) -> f64 {
    if y.abs() < 1e-8 {
        1.0 - (PI * y).powi(2) / 6.0
    } else {
        (PI * y).sin() / (PI * y)
    }
}

impl TestKernel {
    pub fn new(shape: KernelShape, lambda: f64) -> Result<Self, StatsError> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(StatsError::Precondition(format!("support radius {lambda}")));
        }
        Ok(TestKernel { shape, lambda })
    }

    pub fn triangle(lambda: f64) -> Result<Self, StatsError> {
        Self::new(KernelShape::Triangle, lambda)
    }

    /// Fourier side `g(ξ)`.
    pub fn g(&self, xi: f64) -> f64 {
        let a = xi.abs();
        if a >= self.lambda {
            return 0.0;
        }
        match self.shape {
            KernelShape::Triangle => 1.0 - a / self.lambda,
            KernelShape::RaisedCosine => 0.5 * (1.0 + (PI * a / self.lambda).cos()),
        }
    }

    /// `f(x) = ∫ g(ξ) e(xξ) dξ`.
    pub fn f(&self, x: f64) -> f64 {
        let l = self.lambda;
        match self.shape {
            KernelShape::Triangle => l * sinc(l * x).powi(2),
            KernelShape::RaisedCosine => {
                let y = 2.0 * l * x;
                let e = 1.0 - y.abs();
                if e.abs() < 1e-3 {
                    // removable singularity at |y| = 1
                    l * sinc(e) / ((1.0 - e) * (2.0 - e))
                } else {
                    l * sinc(y) / (1.0 - y * y)
                }
            }
        }
    }

    /// `M_0 = ∫ |g|`.
    pub fn m0(&self) -> f64 {
        self.lambda
    }

    /// `M_2 = ∫ |g''| / (2π)²`, so that `|f(x)| ≤ M_2 / x²`.
    pub fn m2(&self) -> f64 {
        match self.shape {
            KernelShape::Triangle => 4.0 / (self.lambda * 4.0 * PI * PI),
            KernelShape::RaisedCosine => 1.0 / (2.0 * PI * self.lambda),
        }
    }

    /// `∫_{-1}^{1} g(ξ) dξ`.
    pub fn g_mass_unit(&self) -> f64 {
        let l = self.lambda;
        match self.shape {
            KernelShape::Triangle if l <= 1.0 => l,
            KernelShape::Triangle => 2.0 - 1.0 / l,
            KernelShape::RaisedCosine if l <= 1.0 => l,
            KernelShape::RaisedCosine => 1.0 + l / PI * (PI / l).sin(),
        }
    }

    /// `∫ (1 - sin(2πx)/(2πx)) f(x) dx = g(0) - ½ ∫_{-1}^{1} g`.
    pub fn reference(&self) -> f64 {
        self.g(0.0) - 0.5 * self.g_mass_unit()
    }
}

/// Periodized value with a bound on the neglected part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Periodized {
    pub value: f64,
    pub error_bound: f64,
}

fn check_n(n: usize) -> Result<f64, StatsError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(StatsError::Precondition(format!("n = {n} must be odd and at least 3")));
    }
    Ok((n - 1) as f64)
}

/// `F(x; n) = Σ_k f(log(q^{n-1})/(2π) · (x + 2πk/log q))`, evaluated through
/// Poisson summation as the finite sum `(1/T) Σ_m g(m/T) e^{i m x log q}` with
/// `T = n - 1`.
pub fn periodize(kernel: &TestKernel, q: u32, n: usize, x: f64) -> Result<Periodized, StatsError> {
    let t = check_n(n)?;
    let theta = x * (q as f64).ln();
    let mmax = (kernel.lambda * t).floor() as i64;
    let mut acc = kernel.g(0.0);
    for m in 1..=mmax {
        acc += 2.0 * kernel.g(m as f64 / t) * (m as f64 * theta).cos();
    }
    Ok(Periodized {
        value: acc / t,
        error_bound: 1e-15 * (2 * mmax + 1) as f64,
    })
}

/// The same series summed directly over `k`, truncated once the tail bound
/// from `|f(x)| ≤ M_2/x²` drops below `tol`.
pub fn periodize_direct(kernel: &TestKernel, q: u32, n: usize, x: f64, tol: f64) -> Result<Periodized, StatsError> {
    let t = check_n(n)?;
    let a = t * (q as f64).ln() * x / (2.0 * PI);
    // Σ_{|k|>K} |f(a + Tk)| ≤ 2 M_2 / (T (T K - |a| - T))
    let kmax = ((2.0 * kernel.m2() / (t * tol) + a.abs()) / t).ceil() as i64 + 1;
    let mut acc = super::Neumaier::default();
    acc.add(kernel.f(a));
    for k in 1..=kmax {
        acc.add(kernel.f(a + t * k as f64));
        acc.add(kernel.f(a - t * k as f64));
    }
    let tail = 2.0 * kernel.m2() / (t * (t * kmax as f64 - a.abs() - t).max(t));
    Ok(Periodized {
        value: acc.value(),
        error_bound: tail,
    })
}
