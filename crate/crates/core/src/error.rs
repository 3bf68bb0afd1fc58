use thiserror::Error;

use crate::endo::{Constraint, Variant};

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("negative coordinate {0}; coordinates range over the nonnegative integers")]
    NegativeCoordinate(i64),

    #[error("family index {index} is not valid for a family of {len} sets")]
    Domain { index: usize, len: usize },

    #[error("set [{base}) produced by a product is not a member of the family")]
    FamilyClosure { base: i64 },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("operation requires the canonical family {{[0),[1)}}")]
    NonCanonicalFamily,

    #[error("{variant}{{k={k}, p={p}}} is out of range: {constraint}")]
    ParameterRange {
        variant: Variant,
        k: i64,
        p: i64,
        constraint: Constraint,
    },

    #[error("D computed as L∘R and as R∘L disagree for {left} and {right}")]
    DOrderMismatch { left: String, right: String },
}
