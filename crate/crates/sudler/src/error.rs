use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An alpha-spec or selector string could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// An index was outside the range covered by a convergent table.
    #[error("index {index} out of range (table holds 0..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    /// An integer was outside the validity range of a rational Ostrowski base.
    #[error("t={t} outside the validity range of the base (t must be < {limit})")]
    OutOfValidity { t: u64, limit: u64 },

    /// Digit string violates the Ostrowski constraints.
    #[error("invalid digit string: {0}")]
    DigitConstraint(String),

    /// The certified precision is not sufficient for the requested computation.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// A precondition on the arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
