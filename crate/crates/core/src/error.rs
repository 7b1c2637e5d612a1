use thiserror::Error;

/// Errors raised by code construction, verification and I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol} out of range at coordinate {coordinate} (alphabet size {q})")]
    SymbolOutOfRange {
        coordinate: usize,
        symbol: u32,
        q: u32,
    },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("duplicate codeword {0}")]
    DuplicateWord(String),

    #[error("operation needs at least {needed} codewords, got {got}")]
    TooFewWords { needed: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("enumeration cap exceeded: {what} needs {needed} items, cap is {cap}")]
    CapExceeded {
        what: String,
        needed: u128,
        cap: usize,
    },

    #[error("uncorrectable word: {0}")]
    Uncorrectable(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionFailed(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
