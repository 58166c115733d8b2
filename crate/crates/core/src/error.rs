use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input that could not be parsed. Line and column are 1-based.
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("substitution is not injective")]
    NotInjective,

    #[error("the shift space is finite")]
    FiniteShift,

    #[error("height is {0}, expected {1}")]
    Height(usize, String),

    #[error("letter index {0} is outside the alphabet")]
    UnknownLetter(usize),

    #[error("digit {digit} is out of range for length {length}")]
    DigitOutOfRange { digit: usize, length: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    /// A window too short to de-substitute without guessing.
    #[error("window too short: {0}")]
    WindowTooShort(String),

    #[error("local rule is not total: {missing} language windows have no output")]
    RuleNotTotal { missing: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn pre(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
