use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside the domain of the requested quantity.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested structure would exceed the supported size limits.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An analysis was requested for a goal distribution with no goal level.
    #[error("all goal probabilities are zero")]
    NoGoalLevel,

    /// Every Monte Carlo trial was discarded for lack of a goal.
    #[error("all trials goalless")]
    AllTrialsGoalless,

    /// Structurally inconsistent input (mismatched lengths, bad matrix, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
