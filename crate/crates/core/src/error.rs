use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("initial basis is not primal feasible (row {row} has value {value})")]
    InfeasibleStart { row: usize, value: f64 },
    #[error("two-variable subproblem is unbounded")]
    UnboundedSubproblem,
    #[error("coefficient overflow: {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
