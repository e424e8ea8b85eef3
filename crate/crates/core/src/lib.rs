//! Spectral substrate for a pseudospectral verification laboratory on the
//! periodic torus: grids and transforms, dyadic frequency decomposition,
//! Besov / mixed time-space norms, Gevrey-weighted multipliers, half-line
//! frequency projections with their bilinear product decomposition, and
//! one-dimensional-kernel quadrature.

pub mod bilinear;
pub mod dyadic;
pub mod error;
pub mod field;
pub mod gevrey;
pub mod grid;
pub mod halfline;
pub mod kernel;
pub mod norms;
pub mod ops;
pub mod snapshot;
pub mod symbol;
pub mod transform;

pub use error::{CoreError, Result};
pub use field::SpectralField;
pub use grid::GridSpec;

pub use num_complex::Complex64;
