use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration size limit exceeded: n = {n} but cap = {cap}")]
    SizeLimit { n: usize, cap: usize },

    #[error("parameter regime violation: {0}")]
    Regime(String),

    #[error("input outside the operation's domain: {0}")]
    NotInDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
