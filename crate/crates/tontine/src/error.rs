use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("scenario index {index} is out of range for {n} participants")]
    ScenarioOutOfRange { index: u64, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no participant survives; the terminal share value is undefined")]
    NoSurvivors,

    #[error("{n} participants exceed the exact-enumeration limit of {limit}; use Monte Carlo")]
    EnumerationTooLarge { n: usize, limit: usize },

    #[error("no internal rate of return in ({lo}, {hi}): the balance does not change sign")]
    NoIrrInBracket { lo: f64, hi: f64 },

    #[error("share weight must be strictly positive: g({prob}) = {value}")]
    NonPositiveShareWeight { prob: f64, value: f64 },

    #[error("Monte Carlo estimation needs at least {min} samples (got {got})")]
    TooFewSamples { min: u64, got: u64 },

    #[error("joint-table sampling supports at most {max} participants (got {n})")]
    JointSamplingTooLarge { n: usize, max: usize },

    #[error("claims must not sum to zero within an outcome")]
    ZeroTotalClaims,

    #[error("unsupported file version {0} (expected 1)")]
    UnsupportedVersion(u32),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
