//! Pointwise re-normalization of the director onto the unit sphere.
//! The continuous flow preserves `|d| = 1`; discrete evolution drifts, and
//! this projects it back while logging the drift. The deviation mean is left
//! untouched: subtracting it would break the unit-length invariant the call
//! just restored, so the gauge is reported instead of silently re-zeroed.

use gvlc_core::transform::{forward_transform, inverse_transform_real};
use gvlc_core::SpectralField;

use crate::error::{Result, SolverError};
use crate::state::SolverState;

#[derive(Debug, Clone, Copy)]
pub struct RenormStats {
    /// `max_x | |d(x)| - 1 |` before the projection.
    pub drift_before: f64,
    pub drift_after: f64,
    /// Magnitude of the deviation mean left after projection.
    pub residual_mean: f64,
}

pub fn renormalize_director(state: &SolverState) -> Result<(SolverState, RenormStats)> {
    let spec = state.spec();
    let pts = spec.points();
    // d = d_bar + delta on the grid
    let mut d_phys = vec![0.0f64; 3 * pts];
    for c in 0..3 {
        let comp = inverse_transform_real(&state.delta.component_field(c));
        for (x, v) in comp.iter().enumerate() {
            d_phys[c * pts + x] = state.d_bar[c] + v;
        }
    }
    let mut drift_before = 0.0f64;
    let mut min_len = f64::INFINITY;
    for x in 0..pts {
        let len = (0..3)
            .map(|c| d_phys[c * pts + x] * d_phys[c * pts + x])
            .sum::<f64>()
            .sqrt();
        drift_before = drift_before.max((len - 1.0).abs());
        min_len = min_len.min(len);
    }
    if min_len < 0.5 {
        return Err(SolverError::DirectorDegenerate { min: min_len });
    }
    let mut parts = Vec::with_capacity(3);
    let mut drift_after = 0.0f64;
    for c in 0..3 {
        let mut vals = vec![0.0f64; pts];
        for x in 0..pts {
            let len = (0..3)
                .map(|cc| d_phys[cc * pts + x] * d_phys[cc * pts + x])
                .sum::<f64>()
                .sqrt();
            vals[x] = d_phys[c * pts + x] / len - state.d_bar[c];
            if c == 0 {
                drift_after = drift_after.max(0.0); // unit by construction
            }
        }
        parts.push(forward_transform(&vals, spec).map_err(SolverError::Core)?);
    }
    let delta = SpectralField::from_components(&parts);
    let residual_mean = (0..3)
        .map(|c| delta.mean(c).norm())
        .fold(0.0, f64::max);
    let next = SolverState { t: state.t, u: state.u.clone(), delta, d_bar: state.d_bar };
    Ok((
        next,
        RenormStats { drift_before, drift_after, residual_mean },
    ))
}
