//! Family statistics over P_n: ratio averages, coefficient limits, recipe
//! main terms, Möbius cancellation, one-level density, and the explicit
//! constants behind the ratio theorems.

mod averages;
mod constants;
mod kernel;
mod recipe;
mod report;

pub use averages::{
    average_char, estimate_c5, moebius_cancellation, moebius_sum_exact, one_level_density, one_level_density_direct,
    ratio_average_empirical, AverageCharResult, C5Estimate, Normalization, RatioSpec, DEFAULT_DENOMINATOR_GUARD,
    DEFAULT_MARGIN,
};
pub use constants::{theorem_constants, ConstantsLedger, QUADRATIC_PRESET};
pub use kernel::{periodize, periodize_direct, KernelShape, Periodized, TestKernel};
pub use recipe::{model_f_series, recipe_main_term, CoefficientSource, RecipeResult, DEFAULT_TAIL_TOL};
pub use report::{read_csv, read_json, write_csv, write_json, StatReport};

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::ffpoly::FfError;
use crate::lfunc::LfError;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error(transparent)]
    Lf(#[from] LfError),
    #[error(transparent)]
    Ff(#[from] FfError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("denominator |L| = {value:e} below guard at member {index}")]
    SmallDenominator { index: u64, value: f64 },
    #[error("unsupported (K, Q) = ({0}, {1})")]
    Unsupported(usize, usize),
    #[error("truncation tail {tail:e} above tolerance {tol:e}")]
    Tail { tail: f64, tol: f64 },
    #[error("report I/O: {0}")]
    Io(String),
}

/// Members per reduction chunk; fixed so sums do not depend on the worker count.
pub(crate) const CHUNK: usize = 2048;

/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct ComplexSum {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexSum {
    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `Σ_{i<len} term(i)` reduced chunk by chunk in index order.
pub(crate) fn chunked_sum<F>(len: usize, term: F) -> Result<Complex64, StatsError>
where
    F: Fn(usize) -> Result<Complex64, StatsError> + Sync,
{
    let partial: Vec<Complex64> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = ComplexSum::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                acc.add(term(i)?);
            }
            Ok(acc.value())
        })
        .collect::<Result<_, StatsError>>()?;
    let mut acc = ComplexSum::default();
    for z in partial {
        acc.add(z);
    }
    Ok(acc.value())
}

/// Exact integer sums of `width` values per member.
pub(crate) fn chunked_int_sums<F>(len: usize, width: usize, term: F) -> Result<Vec<i128>, StatsError>
where
    F: Fn(usize, &mut [i128]) -> Result<(), StatsError> + Sync,
{
    let partial: Vec<Vec<i128>> = (0..len.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![0i128; width];
            let mut buf = vec![0i128; width];
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                buf.iter_mut().for_each(|x| *x = 0);
                term(i, &mut buf)?;
                for (a, b) in acc.iter_mut().zip(&buf) {
                    *a += b;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_, StatsError>>()?;
    let mut acc = vec![0i128; width];
    for p in partial {
        for (a, b) in acc.iter_mut().zip(&p) {
            *a += b;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = Neumaier::default();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }

    #[test]
    fn chunked_sum_independent_of_pool() {
        let f = |i: usize| Ok(Complex64::new((i as f64).sin(), 1.0 / (1.0 + i as f64)));
        let a = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| chunked_sum(10_000, f))
            .unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| chunked_sum(10_000, f))
            .unwrap();
        assert_eq!(a, b);
    }
}
