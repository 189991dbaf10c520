use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base n must be nonzero")]
    ZeroBase,

    #[error("cannot clear denominator n^{exp} with n^{power}")]
    InsufficientClearing { exp: u64, power: u64 },

    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("word contains variable `{0}`")]
    VariableInWord(String),

    #[error("{element} is not in the {subgroup} subgroup")]
    NotInSubgroup {
        element: String,
        subgroup: &'static str,
    },

    #[error("equation is not quadratic: {0}")]
    NotQuadratic(String),

    #[error("expected a {expected} standard form, found {found}")]
    WrongKind {
        expected: &'static str,
        found: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} exceeded its cap of {cap}")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("no binding for variable `{0}`")]
    MissingBinding(String),

    #[error("invalid 3-partition instance: {0}")]
    InvalidInstance(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
