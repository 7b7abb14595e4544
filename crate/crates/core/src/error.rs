use thiserror::Error;

pub type Result<T, E = BaiError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BaiError {
    #[error("invalid bandit instance: {0}")]
    InvalidInstance(String),

    /// An argument lies outside the domain of the function being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("instance has several best arms")]
    Degenerate,

    #[error("Newton iteration did not converge after {iterations} steps (last |phi| = {residual:e})")]
    SolverFailure { iterations: usize, residual: f64 },

    #[error("oracle refused: {0}")]
    OracleRefused(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl BaiError {
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, BaiError::SolverFailure { .. })
    }
}
