use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exhaustive routine refused an instance above its configured size.
    #[error("{what} = {value} exceeds the configured limit {limit}; {hint}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
        hint: &'static str,
    },

    /// No parameter tuple satisfies the named constraint.
    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    /// An input claimed to satisfy a structural property does not.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A randomized stage ran out of attempts.
    #[error("{stage} failed after {attempts} attempts: {detail}")]
    Exhausted {
        stage: &'static str,
        attempts: usize,
        detail: String,
    },

    /// One indexed step of a multi-step construction failed.
    #[error("{stage} {index} failed: {detail}")]
    StageFailed {
        stage: &'static str,
        index: usize,
        detail: String,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
