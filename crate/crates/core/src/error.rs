use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("bundle is not invariant under the twisted action")]
    NotInvariant,

    #[error("budget exceeded: {needed} > {budget} ({what})")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
