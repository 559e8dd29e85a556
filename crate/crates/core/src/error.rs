use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed user input (text, JSON, tokens).
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input that violates a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A linear constraint on user-supplied dimensions cannot be met.
    #[error("infeasible: constraint {constraint} violated ({detail})")]
    Infeasible {
        constraint: &'static str,
        detail: String,
    },

    /// An internal exactness guarantee failed; indicates a bug.
    #[error("consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
