use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("irrational realization unsupported: {0}")]
    UnsupportedType(String),
    #[error("invalid rank {rank} for type {label}")]
    InvalidRank { label: String, rank: usize },
    #[error("group order {order} exceeds bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("multiplicity must be a nonnegative integer on every orbit: {0}")]
    NonIntegralMultiplicity(String),
    #[error("wrong number of multiplicity values: {expected} orbits, {got} values")]
    MultiplicityArity { expected: usize, got: usize },
    #[error("invalid irreducible index {0}")]
    InvalidIrrep(usize),
    #[error("invalid linear character: {0}")]
    InvalidCharacter(String),
    #[error("polynomial is not quasi-invariant: {0}")]
    NotQuasiInvariant(String),
    #[error("operator output is not polynomial: {0}")]
    NonPolynomial(String),
    #[error("reflection terms present where a pure differential operator is required")]
    ReflectionTerms,
    #[error("degree {degree} out of range 1..={bound}")]
    DegreeOutOfRange { degree: usize, bound: usize },
    #[error("size mismatch: partition of {partition} vs class of {class}")]
    SizeMismatch { partition: usize, class: usize },
    #[error("parameter c must be nonzero")]
    ZeroParameter,
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("character table construction failed: {0}")]
    CharacterTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
