use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type {label}{rank}: {reason}")]
    InvalidType {
        label: String,
        rank: usize,
        reason: String,
    },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight has {found} coordinates, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("series gradings differ: {left} vs {right}")]
    RegimeMismatch { left: String, right: String },

    #[error("geometric inverse of {monomial} is not admissible in regime {regime}")]
    InadmissibleInverse { monomial: String, regime: String },

    #[error("cannot reindex a series in regime {0}")]
    UnsupportedReindex(String),

    #[error("a truncation window is required to expand an infinite series")]
    MissingWindow,

    #[error("level {ell} is not admissible for type {label}: {reason}")]
    InvalidLevel {
        ell: u32,
        label: String,
        reason: String,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("Weyl character expansion is not a polynomial: nonzero coefficient at {0}")]
    NotPolynomial(String),

    #[error("sign system is unsatisfiable at {0}")]
    UnsatisfiableSigns(String),

    #[error("invalid Weyl word: {0}")]
    InvalidWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
