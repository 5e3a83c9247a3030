use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("budget exceeded: {required} > {budget}; {hint}")]
    BudgetExceeded {
        required: u128,
        budget: u64,
        hint: &'static str,
    },

    #[error("rank {rank} out of range for weight {weight} blocks of length {len}")]
    RankOutOfRange {
        rank: String,
        len: usize,
        weight: usize,
    },

    #[error("decode error: {0}")]
    Decode(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}
