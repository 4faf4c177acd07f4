use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// An argument outside the domain of the operation (k = 0, p >= k, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters that are individually valid but unusable together.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("graph has {edges} edges, above the baseline greedy cap of {cap}")]
    TooLarge { edges: usize, cap: usize },

    #[error("invalid file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
