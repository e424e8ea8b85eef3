//! Mild-solution evolution of the coupled incompressible velocity /
//! unit-director system on the periodic torus: integrating-factor time
//! marching, the explicit fixed-point construction with linear-flow
//! remainder coupling, seeded initial data, and run monitors.

pub mod error;
pub mod etd;
pub mod initdata;
pub mod monitor;
pub mod nse;
pub mod picard;
pub mod renorm;
pub mod state;
pub mod terms;

pub use error::{Result, SolverError};
pub use etd::{march, step_mild, Scheme, StepOptions};
pub use picard::{picard_solve, PicardConfig, PicardOutcome};
pub use state::SolverState;
