use thiserror::Error;

/// Errors raised by the automaton kernel.
///
/// Mathematical negatives (an inequivalent pair, a failed simulation check)
/// are returned as data, never as an `Error`. The one exception is
/// [`Error::NotEquivalent`], which reports a violated precondition of
/// witness construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol `{symbol}` is not in the alphabet")]
    UnknownSymbol { symbol: String },

    #[error("shape mismatch in {what}: expected {expected}, found {found}")]
    Shape {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: String, right: String },

    #[error("semiring {semiring} does not support this operation ({capability} = false)")]
    Unsupported {
        semiring: String,
        capability: &'static str,
    },

    #[error("invalid {what}: {reason}")]
    Invalid { what: String, reason: String },

    #[error("inputs are not equivalent: word {word:?} gives {lhs} vs {rhs}")]
    NotEquivalent {
        word: String,
        lhs: String,
        rhs: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn shape(what: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::Shape {
            what: what.into(),
            expected,
            found,
        }
    }

    pub fn invalid(what: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what: what.into(),
            reason: reason.into(),
        }
    }
}
