/// Error classes shared by every module in the crate.
///
/// The classes map onto CLI exit codes: configuration, parse, and
/// domain problems are caller-fixable (exit 2), range errors mean a
/// query outran the sieve or its ceiling (exit 3), and overflow means
/// a computation left the exact integer domain (exit 4).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
