use std::path::PathBuf;

use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A quotient of F-factorials left a remainder: the sequence is not
    /// cobweb-admissible at this index.
    #[error("inexact division computing {n} over parts {parts:?}: remainder {remainder}")]
    InexactDivision {
        n: usize,
        parts: Vec<usize>,
        remainder: BigInt,
    },

    /// A denominator F-factorial vanished, so the coefficient is undefined.
    #[error("zero F-factorial in the denominator computing {n} over parts {parts:?}")]
    ZeroDenominator { n: usize, parts: Vec<usize> },

    #[error("sequence `{name}` has no value at index {index} (defined for indices < {len})")]
    IndexOutOfRange {
        name: String,
        index: usize,
        len: usize,
    },

    #[error("gaussian sequence needs an integer base q >= 2, got {0}")]
    InvalidGaussianBase(u64),

    #[error("sequence value at index {index} is negative: {value}")]
    NegativeValue { index: usize, value: BigInt },

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("matrix diagonal entry at index {index} is {value}, expected 1")]
    NonUnitDiagonal { index: usize, value: BigInt },

    #[error("row {row} of a lower-triangular matrix has {len} entries, expected {expected}")]
    MalformedMatrix {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("no lambda decomposition rule registered for sequence `{0}`")]
    UnsupportedLambda(String),

    #[error("invalid parts {parts:?}: {reason}")]
    InvalidParts { parts: Vec<usize>, reason: String },
}

impl Error {
    /// True for errors that mean the sequence is not cobweb-admissible.
    pub fn is_non_admissible(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision { .. } | Error::ZeroDenominator { .. }
        )
    }
}
