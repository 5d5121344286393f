use crate::poly::Var;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("exact division left a nonzero remainder")]
    InexactDivision,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(Var),

    #[error("non-finite complex component")]
    NonFinite,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter outside domain: {0}")]
    Domain(String),

    #[error("linear system is singular")]
    Singular,

    #[error("no convergence: {0}")]
    Convergence(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
