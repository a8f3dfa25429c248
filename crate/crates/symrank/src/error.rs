use thiserror::Error;

/// Errors surfaced to callers. Contract violations inside the library
/// (mismatched variable counts, mixed bases, broken elimination invariants)
/// panic instead: they indicate programmer error, not bad data.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The operation was refused: a resource limit or a field-size floor.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;
