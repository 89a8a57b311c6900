//! Weil polynomials of quadratic characters, completion, functional
//! equation, zeros, and reciprocal series.

mod cache;
mod family;
mod lpoly;
mod series;
mod zeros;

pub use cache::{read_cache, write_cache, CACHE_MAGIC};
pub use family::{digits_from_index, index_from_digits, FamilyData, Method};
pub use lpoly::{
    check_functional_equation, complete, conductor_degree, lpoly_charsum, lpoly_pointcount, point_count_curve,
    twisted_power_sums, LPolynomial,
};
pub use series::{angle_cosine_sums, invert_series, invert_series_normalized, power_sums};
pub use zeros::{zero_angles, ZeroSet, DEFAULT_ZERO_TOL};

use thiserror::Error;

use crate::ffpoly::FfError;

#[derive(Debug, Error)]
pub enum LfError {
    #[error(transparent)]
    Ff(#[from] FfError),
    #[error("q = {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("modulus must be monic of degree at least 1")]
    BadModulus,
    #[error("modulus is not square-free")]
    NotSquarefree,
    #[error("point counting needs odd degree, got {0}")]
    EvenDegree(usize),
    #[error("character sum in degree {degree} is {value}, expected 0")]
    SelfCheck { degree: usize, value: i64 },
    #[error("Newton identity not integral at k = {k}")]
    Newton { k: usize },
    #[error("already completed")]
    AlreadyCompleted,
    #[error("completion required")]
    NotCompleted,
    #[error("functional equation not verified")]
    NotVerified,
    #[error("(1 - u) does not divide the polynomial")]
    NotDivisible,
    #[error("leading coefficient is not ±q^(c/2)")]
    RootNumber,
    #[error("functional equation fails at index {index}")]
    FunctionalEquation { index: usize },
    #[error("zero off the critical circle by {deviation:e}")]
    OffCircle { deviation: f64 },
    #[error("zero angles do not pair up under conjugation")]
    Unpaired,
    #[error("constant term must be 1")]
    BadConstantTerm,
    #[error("integer overflow")]
    Overflow,
    #[error("character-sum and point-count results differ at index {index}")]
    Disagreement { index: u64 },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl PartialEq for LfError {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}
