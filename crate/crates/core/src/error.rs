use thiserror::Error;

use crate::cyclo::CycloError;

/// Errors raised across the library.  Violations of axioms or identities are
/// returned as data, not as errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("group of order {0} exceeds the enumeration cap {1}")]
    GroupTooLarge(u64, u64),
    #[error("cocycle table is missing the entry for ({0}, {1})")]
    IncompleteTable(String, String),
    #[error("operation requires the group Z/4, got orders {0:?}")]
    WrongGroup(Vec<u32>),
    #[error("dimension mismatch: expected {0}, got {1}")]
    DimensionMismatch(usize, usize),
    #[error("resource cap of {0} scalar operations exceeded")]
    ResourceCap(u64),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("invalid involution spec: {0}")]
    InvalidSpec(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("group or conductor mismatch: {0}")]
    GroupMismatch(String),
    #[error("no central element w of degree 2 with w^2 = 1: {0}")]
    NoCentralUnit(String),
    #[error("star(w) is not ±w: {0}")]
    AlphaNotSign(String),
    #[error("unsupported group order {0}: expected a prime or 4")]
    UnsupportedOrder(u32),
    #[error("subspace is not nilpotent")]
    NotNilpotent,
    #[error("decomposition does not match the algebra: {0}")]
    DecompositionMismatch(String),
    #[error("no Cayley-Hamilton type identity found: {0}")]
    NoSolution(String),
    #[error("no nonzero reduced product of components")]
    NoReducedWitness,
    #[error("alternated variables do not share kind and degree: {0}")]
    MixedDegrees(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
