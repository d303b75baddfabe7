//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}: {reason}")]
    UnsupportedRootSystem {
        family: char,
        rank: usize,
        reason: String,
    },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("point is not regular: {0}")]
    NotRegular(String),

    #[error("not rational in Q(zeta_{conductor}): {value}")]
    NotRational { conductor: u64, value: String },

    #[error("conductor {found} does not divide {target}")]
    ConductorNotDivisible { found: u64, target: u64 },

    #[error("galois({a}) undefined: gcd({a}, {n}) != 1")]
    GaloisNotCoprime { a: i64, n: u64 },

    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),

    #[error("point function missing a value at {0}")]
    MissingPoint(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code per the CLI contract: 1 for refused computations
    /// (cost guards, failed verification), 2 for invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Refused(_) | Error::Inconsistency(_) | Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}
