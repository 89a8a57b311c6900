//! Partitions, exact Laurent polynomials, symplectic characters and the
//! multiplicities appearing in the decomposition of ratio averages.

mod character;
mod decompose;
mod laurent;
mod numerators;
mod partition;

pub use character::{schur_poly, sp_character, sp_character_jt, sp_character_weyl, weyl_denominator};
pub use decompose::{
    decompose_sym_truncated, decompose_wedge_oracle, weighted_dimension, Decomposition, MAX_RANK, MAX_SYM_DEGREE,
    MAX_SYM_Q, MAX_WEDGE_K,
};
pub use laurent::{Exps, LaurentPoly};
pub use numerators::{
    check_multiplicity_bound, check_reconstruction, near_zero_lemma_holds, numerator_param, reassemble, sign_patterns,
    skew_multiplicity, stable_numerators, BoundSample, Group, ParamExp, ParamLaurentPoly,
};
pub use partition::{partition_conjugate, Partition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact Laurent division")]
    NotDivisible,
    #[error("character formulas disagree for {0} at rank {1}")]
    CharacterMismatch(Partition, usize),
    #[error("character for {0} at rank {1} has a coefficient that is not a nonnegative integer")]
    NegativeCoefficient(Partition, usize),
    #[error("polynomial is not Weyl invariant")]
    NotInvariant,
    #[error("size cap exceeded")]
    CapExceeded,
    #[error("decomposition depends on the rank")]
    RankDependence,
    #[error("partition with too many parts in the decomposition")]
    SupportViolation,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("conductor {0} is odd")]
    OddConductor(u32),
    #[error("exponent slope outside {{0, 1}}")]
    BadSlope,
}
