//! Arithmetic in F_q and F_q[t].

mod enumerate;
mod factor;
mod field;
mod jacobi;
mod poly;

pub use enumerate::{enumerate_squarefree_monic, family_size, is_squarefree, monic_from_index, SquarefreeMonic};
pub use factor::{factor_poly, moebius_mu, Factorization, DEFAULT_SPLIT_SEED};
pub use field::{Elem, FieldCtx, DEFAULT_ORDER_BOUND};
pub use jacobi::{euler_criterion, jacobi_symbol};
pub use poly::{poly_arith, ArithOp, ArithOutput, PolyQ};

pub(crate) use enumerate::squarefree_raw;
pub(crate) use jacobi::jacobi_raw;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1, got {0}")]
    BadExtensionDegree(u32),
    #[error("field order {p}^{j} exceeds the bound {bound}")]
    OrderTooLarge { p: u32, j: u32, bound: u64 },
    #[error("polynomials live over different fields")]
    MixedContexts,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("quadratic characters need odd characteristic")]
    EvenCharacteristic,
    #[error("degree must be at least 1, got {0}")]
    BadDegree(usize),
    #[error("factorization does not reconstruct its input")]
    FactorizationMismatch,
}
