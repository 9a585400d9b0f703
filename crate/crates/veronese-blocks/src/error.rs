use thiserror::Error;

/// Library-wide error type. Every rejected input names the precondition it
/// violates; `Falsified` is reserved for a verified claim actually failing,
/// which callers are expected to treat as the most severe outcome.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid profile {profile:?} for n = {n}: parts must be positive and sum to n")]
    InvalidProfile { n: usize, profile: Vec<usize> },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{what} requires n >= {min}, got n = {n}")]
    NTooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("weight datum is not allowable: {0}")]
    NotAllowable(String),

    #[error("out of scope: d=1 case")]
    DegreeOne,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("total weight {lambda} is odd; the critical level is defined for even totals")]
    OddTotal { lambda: u64 },

    #[error("hypotheses violated: {0}")]
    Hypotheses(String),

    #[error("falsified: {claim} (witness: {witness})")]
    Falsified { claim: String, witness: String },
}

pub type Result<T> = std::result::Result<T, Error>;
