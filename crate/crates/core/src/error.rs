use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph not connected")]
    Disconnected,
    #[error("level {0} disconnected")]
    LevelDisconnected(u32),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("not rational: {0}")]
    NotRational(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGraph(_)
            | Error::InvalidDatum(_)
            | Error::Parse { .. }
            | Error::ModulusMismatch(..) => 1,
            Error::Disconnected
            | Error::LevelDisconnected(_)
            | Error::Hypothesis(_)
            | Error::Undefined(_) => 2,
            Error::Certification(_) | Error::NotRational(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
