use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-visible condition;
/// `Invariant` marks an internal consistency failure that valid input must not reach.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weights {0:?} are not tame (sum of 1/w_i must exceed l - 2)")]
    NotTame(Vec<u32>),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("Euler matrix is not unimodular (det = {0})")]
    SingularEuler(i128),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("charge vanishes")]
    ZeroCharge,
    #[error("charge lies in the open lower half plane")]
    LowerHalfPlane,
    #[error("weight data differ")]
    WeightMismatch,
    #[error("base datum must have Im z > 0")]
    NotNonConcentrated,
    #[error("degenerate datum: Z vanishes on {0}")]
    Degenerate(String),
    #[error("rank coefficient must be positive")]
    NonPositiveRank,
    #[error("too many free variables ({0} > 10)")]
    TooManyVariables(usize),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
