use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("crossing {crossing}: sign is ambiguous (wraparound on a short closed component); supply an explicit sign")]
    AmbiguousSign { crossing: usize },

    #[error("unknown edge {0}")]
    UnknownEdge(i64),

    #[error("polynomial variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("substitution error: {0}")]
    Substitution(String),

    #[error("u-grading unavailable: {0}")]
    MuUnavailable(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("invalid operation: {0}")]
    Operation(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Syntax(e.to_string())
    }
}
