use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (dimension mismatch, bad polynomial, ...).
    #[error("input error: {0}")]
    Input(String),

    /// A bounded search or stabilization test ran out of budget.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A verification step failed; carries the failing stage.
    #[error("certificate failed at {stage}: {detail}")]
    Certificate { stage: String, detail: String },

    #[error("non-split algebra, extend scalars: {0}")]
    NonSplit(String),

    #[error("self-injectivity failed: {0}")]
    NotSelfInjective(String),

    #[error("hypothesis fails: {0}")]
    Hypothesis(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn inconclusive(msg: impl Into<String>) -> Self {
        Error::Inconclusive(msg.into())
    }

    pub fn certificate(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Certificate { stage: stage.into(), detail: detail.into() }
    }
}
