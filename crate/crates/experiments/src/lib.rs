//! Experiment orchestration and deterministic reporting for the spectral
//! verification laboratory.

pub mod config;
pub mod error;
pub mod report;
pub mod suites;

pub use config::ExperimentConfig;
pub use error::{ExperimentError, Result};
pub use report::ExperimentReport;
