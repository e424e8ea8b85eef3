use gvlc_core::ops::divergence_sup;
use gvlc_core::{CoreError, GridSpec, SpectralField};

use crate::error::{Result, SolverError};

/// Evolving fields: divergence-free velocity `u`, director deviation
/// `delta = d - d_bar`, and the constant far-field direction `d_bar`.
#[derive(Debug, Clone)]
pub struct SolverState {
    pub t: f64,
    pub u: SpectralField,
    pub delta: SpectralField,
    pub d_bar: [f64; 3],
}

impl SolverState {
    pub fn new(u: SpectralField, delta: SpectralField, d_bar: [f64; 3]) -> Result<Self> {
        let spec = u.spec;
        if spec.dim != 3 {
            return Err(SolverError::Core(CoreError::InvalidGrid(
                "solver runs require dim = 3".into(),
            )));
        }
        if u.components() != 3 || delta.components() != 3 {
            return Err(SolverError::Core(CoreError::ComponentMismatch {
                got: u.components().max(delta.components()),
                want: 3,
            }));
        }
        let norm = (d_bar[0] * d_bar[0] + d_bar[1] * d_bar[1] + d_bar[2] * d_bar[2]).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(SolverError::DirectorNotUnit { norm });
        }
        let mut s = Self { t: 0.0, u, delta, d_bar };
        s.enforce_gauge();
        s.check_divergence()?;
        Ok(s)
    }

    pub fn spec(&self) -> GridSpec {
        self.u.spec
    }

    /// Zero-mean convention for both fields (the mean of `d` lives in `d_bar`).
    pub fn enforce_gauge(&mut self) {
        self.u.zero_mean();
        self.delta.zero_mean();
    }

    pub fn check_divergence(&self) -> Result<f64> {
        let div = divergence_sup(&self.u).map_err(SolverError::Core)?;
        if div > 1e-11 {
            return Err(SolverError::DivergenceDrift { sup: div });
        }
        Ok(div)
    }

    pub fn check_finite(&self) -> Result<()> {
        if !self.u.is_finite() || !self.delta.is_finite() {
            return Err(SolverError::NonFinite { t: self.t });
        }
        Ok(())
    }

    /// Grid max of |u| in physical space (for the step-size guard).
    pub fn max_velocity(&self) -> f64 {
        let phys = gvlc_core::transform::inverse_transform(&self.u);
        let pts = self.spec().points();
        (0..pts)
            .map(|x| {
                (0..3)
                    .map(|c| phys[c * pts + x].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}
