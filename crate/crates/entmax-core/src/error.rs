use thiserror::Error;

/// Errors surfaced by the library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operands or settings are inconsistent with each other.
    #[error("configuration error: {0}")]
    Config(String),

    /// A brute-force enumeration would exceed the hard size limit.
    #[error("grid too large: {points} configurations exceed the limit of {limit}")]
    GridTooLarge { points: u128, limit: u128 },

    /// Malformed textual input (JSON configs, fraction literals).
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
