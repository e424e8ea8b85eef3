use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Core(#[from] gvlc_core::CoreError),
    #[error("d_bar must be a unit vector, |d_bar| = {norm}")]
    DirectorNotUnit { norm: f64 },
    #[error("velocity divergence drifted to {sup:.3e}")]
    DivergenceDrift { sup: f64 },
    #[error("non-finite field detected at t = {t}")]
    NonFinite { t: f64 },
    #[error("step guard: dt = {dt:.3e} exceeds c / max|u| = {limit:.3e}")]
    StepGuard { dt: f64, limit: f64 },
    #[error("director magnitude fell to {min:.3} (< 0.5); outside the validity regime")]
    DirectorDegenerate { min: f64 },
}

pub type Result<T> = std::result::Result<T, SolverError>;
