use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] gvlc_core::CoreError),
    #[error(transparent)]
    Solver(#[from] gvlc_solver::SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;
