use thiserror::Error;

use crate::exactmath::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scheme parameters: {0}")]
    InvalidParams(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("instance too large: {what} = {size} exceeds cap {cap}")]
    TooLarge { what: &'static str, size: u128, cap: u128 },

    #[error("singular linear system: {0}")]
    SingularSystem(String),

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(usize, usize),

    #[error("invalid row: {0}")]
    InvalidRow(String),

    #[error("duplicate row {row} (first seen as row {first})")]
    DuplicateRow { row: usize, first: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("identity violated: {0}")]
    IdentityViolated(String),

    #[error("natural bound {0} is not an integer, no index-1 design can exist")]
    NonIntegralBound(Rat),

    #[error("ambiguous spectrum: {0}")]
    AmbiguousSpectrum(String),

    #[error("ingredient rejected: {0}")]
    Ingredient(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
