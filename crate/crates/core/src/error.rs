use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("outcome sets do not match: {0}")]
    OutcomeMismatch(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis does not apply: {0}")]
    Hypothesis(String),

    #[error("invalid input space: {0}")]
    InvalidSpace(String),

    #[error("invalid input tuple: {0}")]
    InvalidInput(String),

    #[error("invalid protocol at node {node}: {reason}")]
    InvalidProtocol { node: String, reason: String },

    #[error("enumeration too large: {leaves} leaves x {inputs} inputs exceeds 2^24")]
    TooLarge { leaves: usize, inputs: usize },

    #[error("protocol error {delta} is not below 1/2")]
    ErrorTooLarge { delta: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
