use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// No power pair satisfies both SINR thresholds; the learning problem
    /// has no goal state.
    #[error("infeasible scenario: no power pair meets both SINR thresholds")]
    Infeasible,

    /// A power-control update was fed an SINR it cannot divide by.
    #[error("invalid SINR measurement: {0}")]
    InvalidMeasurement(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Training produced a NaN or infinite loss; the run aborts rather than
    /// keep stepping on garbage gradients.
    #[error("non-finite loss {loss} at iteration {iteration}")]
    NonFiniteLoss { iteration: u64, loss: f64 },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("scenario document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
