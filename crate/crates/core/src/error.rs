// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line count {0} is outside the supported range 1..={max}", max = crate::MAX_WIDTH)]
    InvalidWidth(usize),

    #[error("width mismatch: {left} lines vs {right} lines")]
    WidthMismatch { left: usize, right: usize },

    #[error("value {value} does not fit in {width} lines")]
    ValueOutOfRange { value: u64, width: usize },

    #[error("expected {expected} rows for {width} lines, found {found}")]
    WrongLength {
        width: usize,
        expected: usize,
        found: usize,
    },

    #[error("not a bijection: value {value} appears more than once")]
    DuplicateValue { value: u32 },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("patterns {p} and {q} are at Hamming distance {distance}, not 1")]
    NotAdjacent { p: u32, q: u32, distance: u32 },

    #[error("gate index {index} out of range for a circuit of {len} gates")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("gates {0} and {1} are not identical")]
    GatesDiffer(usize, usize),

    #[error("circuit does not realize the given specification (first mismatch at row {row})")]
    NotRealized { row: u32 },

    #[error("output multiplicity must be at least 1")]
    ZeroMultiplicity,

    #[error("trial count must be at least 1")]
    ZeroTrials,

    #[error("embedding failed: {0}")]
    Embedding(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
