use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("complement of a generator-tier set is not computable")]
    ComplementOfGeneratorTier,
    #[error("operation `{op}` requires finite or eventually periodic operands")]
    TierError { op: &'static str },
    #[error("syntax error at {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("filter base lacks the finite intersection property ({0})")]
    FipViolation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
