use thiserror::Error;

/// Errors raised by the exact-arithmetic and certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("matrix is not invertible over the integers")]
    NotUnimodular,

    #[error("residue moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search exhausted below {limit}")]
    SearchExhausted { limit: u64 },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("search cancelled")]
    Cancelled,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
