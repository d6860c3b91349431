use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group error: {0}")]
    Group(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::Json(_) => 2,
            Error::Group(_) => 3,
            Error::Precondition(_) | Error::DivisionByZero | Error::BasisMismatch(_) | Error::Unsupported(_) => 4,
        }
    }
}

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
