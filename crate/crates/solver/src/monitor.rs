//! Run monitors: the weighted-norm blow-up quantity on expanding prefixes,
//! and the physical energy balance.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::gevrey::{gevrey_multiply, GevreyWeight};
use gvlc_core::norms::{chemin_lerner_norm, lp_norm, BesovIndex, TimeNormSpec};
use gvlc_core::ops::gradient;
use gvlc_core::SpectralField;

use crate::error::Result;

/// The six-norm quantity whose finiteness controls continuation: weighted
/// time-integral norms of the velocity at the indices
/// `(1, 3/p + 1), (1 + th, 3/p + (1-th)/(1+th)), ((1+th)/th, 3/p + (th-1)/(1+th))`
/// and of the director deviation at
/// `(1, 3/q + 2), (1 + th, 3/q + 2/(1+th)), ((1+th)/th, 3/q + 2 th/(1+th))`.
#[derive(Debug, Clone)]
pub struct BlowupReport {
    /// `(t, quantity on [0, t])` for a set of expanding prefixes.
    pub prefix_values: Vec<(f64, f64)>,
    /// Increment of the last half over increment of the first half.
    pub growth_ratio: f64,
    pub flagged_increasing: bool,
}

/// Growth-trend threshold: a decaying run has shrinking increments
/// (ratio < 1); synthetic inflation pushes the ratio well above it.
pub const GROWTH_FLAG_RATIO: f64 = 1.25;

fn weighted(series: &[SpectralField], t_grid: &[f64]) -> Result<Vec<SpectralField>> {
    Ok(series
        .iter()
        .zip(t_grid)
        .map(|(f, &t)| gevrey_multiply(f, &GevreyWeight::new(t), 1.0))
        .collect::<gvlc_core::Result<_>>()?)
}

pub fn blowup_quantity(
    u_series: &[SpectralField],
    d_series: &[SpectralField],
    t_grid: &[f64],
    p: f64,
    q: f64,
    theta: f64,
    dec: &DyadicDecomposition,
) -> Result<f64> {
    assert!(theta > 0.0 && theta <= 1.0);
    let wu = weighted(u_series, t_grid)?;
    let wd = weighted(d_series, t_grid)?;
    let norm = |series: &[SpectralField], rho: f64, s: f64, pp: f64| -> gvlc_core::Result<f64> {
        chemin_lerner_norm(
            series,
            &TimeNormSpec::new(rho, t_grid.to_vec(), BesovIndex::new(s, pp, 1.0)),
            dec,
        )
    };
    let r1 = 1.0 + theta;
    let r2 = (1.0 + theta) / theta;
    let total = norm(&wu, 1.0, 3.0 / p + 1.0, p)?
        + norm(&wu, r1, 3.0 / p + (1.0 - theta) / (1.0 + theta), p)?
        + norm(&wu, r2, 3.0 / p + (theta - 1.0) / (1.0 + theta), p)?
        + norm(&wd, 1.0, 3.0 / q + 2.0, q)?
        + norm(&wd, r1, 3.0 / q + 2.0 / (1.0 + theta), q)?
        + norm(&wd, r2, 3.0 / q + 2.0 * theta / (1.0 + theta), q)?;
    Ok(total)
}

pub fn blowup_monitor(
    u_series: &[SpectralField],
    d_series: &[SpectralField],
    t_grid: &[f64],
    p: f64,
    q: f64,
    theta: f64,
    dec: &DyadicDecomposition,
) -> Result<BlowupReport> {
    let n = t_grid.len();
    assert!(n >= 5);
    let marks = [n / 4, n / 2, 3 * n / 4, n - 1];
    let mut prefix_values = Vec::new();
    for &m in &marks {
        let v = blowup_quantity(
            &u_series[..=m],
            &d_series[..=m],
            &t_grid[..=m],
            p,
            q,
            theta,
            dec,
        )?;
        prefix_values.push((t_grid[m], v));
    }
    let half = prefix_values[1].1;
    let full = prefix_values[3].1;
    let first_inc = half.max(1e-300);
    let second_inc = full - half;
    let growth_ratio = second_inc / first_inc;
    Ok(BlowupReport {
        prefix_values,
        growth_ratio,
        flagged_increasing: growth_ratio > GROWTH_FLAG_RATIO,
    })
}

/// `||u(t)||_{L^2}^2 + ||grad d(t)||_{L^2}^2` (with `grad d = grad delta`).
pub fn energy(u: &SpectralField, delta: &SpectralField) -> Result<f64> {
    let eu = lp_norm(u, 2.0).powi(2);
    let mut ed = 0.0;
    for c in 0..delta.components() {
        let g = gradient(&delta.component_field(c)).map_err(crate::error::SolverError::Core)?;
        ed += lp_norm(&g, 2.0).powi(2);
    }
    Ok(eu + ed)
}
