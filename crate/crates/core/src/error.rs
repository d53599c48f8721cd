use thiserror::Error;

use crate::polyring::VarId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("assignment is missing a value for {0}")]
    IncompleteAssignment(VarId),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("term guard tripped: {terms} terms exceeds the cap of {cap}")]
    Resource { terms: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
