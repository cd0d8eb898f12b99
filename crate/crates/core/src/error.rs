use thiserror::Error;

/// Errors raised by the combinatorial core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("elements belong to different root data (rank {expected} vs {found})")]
    DatumMismatch { expected: usize, found: usize },
    #[error("invalid facet {facet:?}: {reason}")]
    InvalidFacet { facet: Vec<usize>, reason: String },
    #[error("facet mismatch: {left:?} vs {right:?}")]
    FacetMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("invalid prime {0}: coefficients must live in F_p for a prime p")]
    InvalidPrime(u64),
    #[error("invalid Levi datum: {0}")]
    InvalidLevi(String),
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
