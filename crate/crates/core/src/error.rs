use thiserror::Error;

use crate::types::CalculusMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{construct} is not allowed in {mode}")]
    ForbiddenInMode {
        construct: &'static str,
        mode: CalculusMode,
    },

    #[error("malformed arena: {0}")]
    MalformedArena(String),

    #[error("hyperforest has {nodes} nodes, above the search bound of {limit}")]
    SizeLimit { nodes: usize, limit: usize },

    #[error("type error at {path}: {msg}")]
    Typing { path: String, msg: String },

    #[error("duplicate index entries: {0}")]
    DuplicateEntries(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
