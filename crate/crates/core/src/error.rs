use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("duplicate exponent {0}")]
    DuplicateExponent(u64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("division by a value indistinguishable from zero")]
    DivisionByZero,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("scan window exceeded: {0}")]
    ScanWindowExceeded(String),
    #[error("search exhausted: {summary}")]
    SearchExhausted { summary: String, trace: Vec<String> },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("bound violation: {0}")]
    BoundViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
