use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe mismatch: expected {expected} elements, found {found}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("relation is not an endo-relation ({dom} -> {cod})")]
    NotEndo { dom: usize, cod: usize },

    #[error("identifier {id} out of range for universe of size {size}")]
    OutOfRange { id: usize, size: usize },

    #[error("malformed diagram: {0}")]
    Malformed(String),

    #[error("invalid rule diagram: {0}")]
    Invalid(String),

    #[error("match is not admissible: {0}")]
    InvalidMatch(String),

    #[error("rule algebra product requires irreducible operands")]
    NotIrreducible,

    #[error("graph is not connected")]
    NotConnected,
}

pub type Result<T> = std::result::Result<T, Error>;
