use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero vector at index {0}")]
    ZeroVector(usize),

    #[error("family of size {m} exceeds the exact enumeration cap ({cap}); raise the cap to override")]
    CapExceeded { m: usize, cap: usize },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("empty input")]
    Empty,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
