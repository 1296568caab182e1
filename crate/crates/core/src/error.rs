use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor prime")]
    BadCharacteristic(u32),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharacteristicMismatch(u32, u32),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("slot {k} out of range for arity {arity}")]
    SlotOutOfRange { k: usize, arity: usize },
    #[error("invalid surjection {0:?}")]
    InvalidSurjection(Vec<usize>),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("invalid operator sequence {ops:?} on a simplex of dimension {dim}")]
    BadOperator { ops: Vec<usize>, dim: usize },
    #[error("invalid cochain: {0}")]
    InvalidCochain(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
