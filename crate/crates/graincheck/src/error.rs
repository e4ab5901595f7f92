use thiserror::Error;

use crate::grain::NoGrainReason;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state labels do not match: {0}")]
    StateMismatch(String),

    #[error("zero-mass cell: {0}")]
    ZeroMassCell(String),

    #[error("ensemble mixes finite and parametric posteriors")]
    MixedRepresentation,

    #[error("no analytic density path for this pair: {0}")]
    UnsupportedPair(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("no grain certificate for cell {cell}: {reason}")]
    NoGrain { cell: String, reason: NoGrainReason },

    #[error("variance must be positive, got {0}")]
    NonpositiveVariance(f64),

    #[error("diagnosticity parameter must be nonnegative, got {0}")]
    NegativeTheta(f64),

    #[error("grid model space too large: {0}")]
    SearchSpaceTooLarge(String),

    #[error("notion ladder violated: {0}")]
    LadderViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },

    #[error("panel priors are heterogeneous; offending agents: {}", .0.join(", "))]
    HeterogeneousPriors(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
