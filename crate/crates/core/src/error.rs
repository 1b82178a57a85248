//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong while building games, running strategies or checking laws.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("construction error: {0}")]
    Construction(String),

    #[error("type error: {0}")]
    Type(String),

    #[error("composition error: {0}")]
    Composition(String),

    /// Hidden interaction exceeded its per-visible-move budget.
    #[error("livelock after {budget} internal moves at position `{position}`")]
    Livelock { position: String, budget: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("illegal move `{mv}` at position `{position}`")]
    IllegalMove { position: String, mv: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, GameError>;
