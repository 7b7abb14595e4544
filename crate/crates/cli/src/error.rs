use gaussian_bai::BaiError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Solver(BaiError),

    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// 2 for anything the caller can fix, 3 when the numerical solver fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solver(_) => 3,
            CliError::Usage(_) | CliError::Validation(_) | CliError::Output(_) => 2,
        }
    }
}

impl From<BaiError> for CliError {
    fn from(e: BaiError) -> Self {
        if e.is_solver_failure() {
            CliError::Solver(e)
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(std::io::Error::other(e))
    }
}
