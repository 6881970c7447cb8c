use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("law violated: {0}")]
    Law(#[from] crate::LawViolation),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("conclusion failed although hypotheses hold: {0}")]
    Conclusion(String),

    #[error("{0} is not locally nilpotent")]
    NotLocallyNilpotent(String),

    #[error("truncation boundary: {0}")]
    Boundary(String),

    #[error("expansion cap exceeded: {what} needs more than {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
