use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid conductor {0}: must be at least 1")]
    InvalidConductor(i64),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: {k} is divisible by {m}")]
    Pole { k: i64, m: u32 },

    #[error("invalid rotation class {j} for m = {m}: gcd(j, m) must be 1 and 1 <= j < m")]
    InvalidRotationClass { j: i64, m: u32 },
    #[error("inconsistent action data: {0}")]
    InconsistentData(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("inconsistent character: {0}")]
    InconsistentCharacter(String),
    #[error("inconsistent fixed-point data: {0}")]
    InconsistentFixedData(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),

    #[error("trivial group: (Z/{0})^x / {{+-1}} has a single element")]
    TrivialGroup(u32),
    #[error("rank of K is {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("no convention reproduces the Toledo coefficients; solved table:\n{table}")]
    ConventionMismatch { table: String },
    #[error("incomplete input: {0}")]
    IncompleteInput(String),

    #[error("unknown {family} strategy '{name}' (available: {available})")]
    UnknownStrategy {
        family: &'static str,
        name: String,
        available: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Malformed input, as opposed to well-formed but mathematically
    /// inconsistent data.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::InvalidConductor(_)
                | Error::InvalidRotationClass { .. }
                | Error::UnsupportedParameter(_)
                | Error::UnknownStrategy { .. }
                | Error::IncompleteInput(_)
                | Error::InvalidTolerance(_)
        )
    }
}
