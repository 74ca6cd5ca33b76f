use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A symbol outside the alphabet; `position` is 1-based.
    #[error("malformed input at position {position}: symbol `{symbol}` is not in the alphabet of size {q}")]
    MalformedInput { position: usize, symbol: char, q: u8 },

    #[error("alphabet size must be in 2..=36, got {0}")]
    InvalidAlphabet(u32),

    #[error("operation requires a non-empty sequence")]
    EmptyInput,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range {min}..={max}")]
    Index { index: i64, min: i64, max: i64 },

    #[error("cannot delete {t} symbols from a sequence of length {n}")]
    Range { t: usize, n: usize },

    #[error("enumeration budget of {budget} candidate sequences exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("operation requires two distinct sequences")]
    DegeneratePair,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported offset pattern {0:?}")]
    Pattern(Vec<usize>),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}
