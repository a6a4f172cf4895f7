use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("moduli at positions {first} and {second} are not coprime ({m1} and {m2})")]
    NonCoprimeModuli {
        first: usize,
        second: usize,
        m1: String,
        m2: String,
    },

    #[error("zero polynomial has no Sturm sequence")]
    ZeroPolynomial,

    #[error("polynomial is not monic: leading coefficient {0}")]
    NotMonic(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gram matrix is not alternating at ({row}, {col})")]
    NotAlternating { row: usize, col: usize },

    #[error("gram matrix is degenerate (rank {rank} < {dim})")]
    DegenerateForm { rank: usize, dim: usize },

    #[error("eigenvalue list invalid: {0}")]
    BadEigenvalues(String),

    #[error("enumeration guard exceeded: {states} states > limit {limit}")]
    GuardExceeded { states: u128, limit: u128 },

    #[error("enumeration requires a finite field")]
    InfiniteField,

    #[error("connection is not flat: dt{i}^dt{j} component nonzero in degree {degree}")]
    NotFlat { i: usize, j: usize, degree: u32 },

    #[error("unsupported extension degree {0} (only 2 and 3)")]
    UnsupportedDegree(u32),

    #[error("search exhausted at {last} without finding {what}")]
    SearchExhausted { what: &'static str, last: String },

    #[error("q = {0} is not an odd prime")]
    NotOddPrime(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}
