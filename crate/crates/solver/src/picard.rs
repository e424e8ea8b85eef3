//! Fixed-point construction of the corrected fields `(u_bar, delta_bar)`:
//! each iterate solves the memory integral against the frozen previous
//! iterate, with the linear heat flows entering through the coupling terms
//! `R1..R5`. Convergence is tracked in the exponentially weighted mixed
//! time-space norms, with the index-regime weights `A` and `B`.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::gevrey::{gevrey_multiply, GevreyWeight};
use gvlc_core::norms::BesovIndex;
use gvlc_core::ops::leray_project;
use gvlc_core::SpectralField;

use crate::error::Result;
use crate::etd::{duhamel_series, linear_flows, uniform_grid};
use crate::state::SolverState;
use crate::terms::{nonlinear_director, nonlinear_velocity};

/// Iteration parameters. `p`, `q` select the regularity indices
/// (`3/p - 1` for the velocity pair, `3/q` for the director pair).
#[derive(Debug, Clone)]
pub struct PicardConfig {
    pub max_iters: usize,
    pub contraction_tol: f64,
    pub horizon: f64,
    /// Time steps per iterate (nodes = steps + 1).
    pub steps: usize,
    pub p: f64,
    pub q: f64,
    /// Smallness targets of the boundedness claim; recorded into the trace.
    pub eps_smallness: f64,
    pub zeta: f64,
    /// Uniform constants entering the boundary-regime weights; the analysis
    /// leaves them implicit, so they are configuration.
    pub c0: f64,
    pub c1: f64,
}

impl Default for PicardConfig {
    fn default() -> Self {
        Self {
            max_iters: 12,
            contraction_tol: 1e-10,
            horizon: 0.25,
            steps: 128,
            p: 2.0,
            q: 2.0,
            eps_smallness: 0.1,
            zeta: 0.01,
            c0: 1.0,
            c1: 1.0,
        }
    }
}

/// Regime weights for the combined norm: the plain weight 1 in the interior
/// of the admissibility window, `2 c0 c1 M0` on the boundary cases.
pub fn regime_weights(p: f64, q: f64, c0: f64, c1: f64, m0: f64) -> (f64, f64) {
    let gap = 1.0 / q - 1.0 / p;
    let lower = -(1.0f64 / 3.0).min(1.0 / (2.0 * p));
    let tol = 1e-12;
    let a = if (gap - 1.0 / 3.0).abs() <= tol { 2.0 * c0 * c1 * m0 } else { 1.0 };
    let b = if (gap - lower).abs() <= tol { 2.0 * c0 * c1 * m0 } else { 1.0 };
    (a, b)
}

/// The four mixed-norm components of a trajectory pair.
#[derive(Debug, Clone, Copy)]
pub struct PairNorms {
    pub u_sup: f64,
    pub u_int: f64,
    pub d_sup: f64,
    pub d_int: f64,
}

impl PairNorms {
    pub fn combined(&self, a: f64, b: f64) -> f64 {
        a * (self.u_sup + self.d_sup) + b * (self.u_int + self.d_int)
    }
}

/// Exponentially weighted mixed norms of a `(u, delta)` snapshot series:
/// sup-in-time at the base indices, time-integral at the smoothed indices.
/// One weighting and one block pass per snapshot serves all four norms.
pub fn weighted_pair_norms(
    u_series: &[SpectralField],
    d_series: &[SpectralField],
    t_grid: &[f64],
    p: f64,
    q: f64,
    dec: &DyadicDecomposition,
) -> Result<PairNorms> {
    assert_eq!(u_series.len(), t_grid.len());
    assert_eq!(d_series.len(), t_grid.len());
    let nblocks = (dec.j_max - dec.j_min + 1) as usize;
    let nt = t_grid.len();
    let mut bu = vec![0.0f64; nblocks * nt];
    let mut bd = vec![0.0f64; nblocks * nt];
    for (k, &t) in t_grid.iter().enumerate() {
        let w = GevreyWeight::new(t);
        let wu = gevrey_multiply(&u_series[k], &w, 1.0)?;
        let wd = gevrey_multiply(&d_series[k], &w, 1.0)?;
        for (bi, (_, v)) in gvlc_core::norms::block_norms(&wu, p, dec).into_iter().enumerate() {
            bu[bi * nt + k] = v;
        }
        for (bi, (_, v)) in gvlc_core::norms::block_norms(&wd, q, dec).into_iter().enumerate() {
            bd[bi * nt + k] = v;
        }
    }
    let trapz = |vals: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 1..nt {
            acc += 0.5 * (t_grid[i] - t_grid[i - 1]) * (vals[i - 1] + vals[i]);
        }
        acc
    };
    let assemble = |blocks: &[f64], s_sup: f64, s_int: f64| -> (f64, f64) {
        let mut sup = 0.0;
        let mut int = 0.0;
        for bi in 0..nblocks {
            let j = dec.j_min + bi as i32;
            let row = &blocks[bi * nt..(bi + 1) * nt];
            let m = row.iter().cloned().fold(0.0, f64::max);
            sup += 2f64.powf(s_sup * j as f64) * m;
            int += 2f64.powf(s_int * j as f64) * trapz(row);
        }
        (sup, int)
    };
    let (u_sup, u_int) = assemble(&bu, 3.0 / p - 1.0, 3.0 / p + 1.0);
    let (d_sup, d_int) = assemble(&bd, 3.0 / q, 3.0 / q + 2.0);
    Ok(PairNorms { u_sup, u_int, d_sup, d_int })
}

#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub iter: usize,
    /// Combined weighted norm of the iterate.
    pub size: f64,
    /// Combined weighted norm of the difference from the previous iterate.
    pub diff: f64,
    /// `diff_n / diff_{n-1}` once two differences exist.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub records: Vec<IterationRecord>,
    pub weight_a: f64,
    pub weight_b: f64,
    pub m0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PicardOutcome {
    Converged,
    NonContracting,
    MaxIters,
}

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub t_grid: Vec<f64>,
    pub u: Vec<SpectralField>,
    pub delta: Vec<SpectralField>,
    pub u_bar: Vec<SpectralField>,
    pub delta_bar: Vec<SpectralField>,
    pub d_bar: [f64; 3],
    pub outcome: PicardOutcome,
}

pub fn picard_solve(
    u0: &SpectralField,
    delta0: &SpectralField,
    d_bar: [f64; 3],
    cfg: &PicardConfig,
    dec: &DyadicDecomposition,
) -> Result<(PicardSolution, IterationTrace)> {
    let t_grid = uniform_grid(cfg.horizon, cfg.steps);
    let (u_l, d_l) = linear_flows(u0, delta0, &t_grid);
    let nodes = t_grid.len();
    let spec = u0.spec;

    let m0 = {
        let idx_u = BesovIndex::new(3.0 / cfg.p - 1.0, cfg.p, 1.0);
        let idx_d = BesovIndex::new(3.0 / cfg.q, cfg.q, 1.0);
        gvlc_core::norms::besov_norm(u0, idx_u, dec)
            + gvlc_core::norms::besov_norm(delta0, idx_d, dec)
    };
    let (wa, wb) = regime_weights(cfg.p, cfg.q, cfg.c0, cfg.c1, m0);

    let zero_u = vec![SpectralField::zeros(spec, 3); nodes];
    let zero_d = vec![SpectralField::zeros(spec, 3); nodes];
    let mut u_bar = zero_u;
    let mut d_bar_series = zero_d;

    let mut trace = IterationTrace { records: Vec::new(), weight_a: wa, weight_b: wb, m0 };
    let mut prev_diff: Option<f64> = None;
    let mut outcome = PicardOutcome::MaxIters;

    // iteration-independent forcing parts: everything built from the linear
    // flows alone is shared by every iterate
    struct StaticParts {
        conv_ll: SpectralField,
        stress_ll: SpectralField,
        conv_uldl: SpectralField,
        e_ll: SpectralField,
    }
    let mut statics = Vec::with_capacity(nodes);
    for k in 0..nodes {
        statics.push(StaticParts {
            conv_ll: crate::terms::convection(&u_l[k], &u_l[k])?,
            stress_ll: crate::terms::elastic_stress_div(&d_l[k])?,
            conv_uldl: crate::terms::convection(&u_l[k], &d_l[k])?,
            e_ll: crate::terms::grad_inner(&d_l[k], &d_l[k])?,
        });
    }

    for iter in 1..=cfg.max_iters {
        // forcing at every node from the frozen previous iterate
        let mut g_u = Vec::with_capacity(nodes);
        let mut g_d = Vec::with_capacity(nodes);
        for k in 0..nodes {
            let state = SolverState {
                t: t_grid[k],
                u: u_bar[k].clone(),
                delta: d_bar_series[k].clone(),
                d_bar,
            };
            let st = &statics[k];
            // R1 = uL.grad uL + uL.grad ub + ub.grad uL
            let mut r1 = st.conv_ll.clone();
            r1.add_assign_scaled(&crate::terms::convection(&u_l[k], &u_bar[k])?, 1.0);
            r1.add_assign_scaled(&crate::terms::convection(&u_bar[k], &u_l[k])?, 1.0);
            // R2 = stress(dL) + cross-stress(dL, db)
            let mut r2 = st.stress_ll.clone();
            r2.add_assign_scaled(
                &crate::terms::elastic_stress_cross(&d_l[k], &d_bar_series[k])?,
                1.0,
            );
            // R3 = uL.grad dL + uL.grad db + ub.grad dL
            let mut r3 = st.conv_uldl.clone();
            r3.add_assign_scaled(&crate::terms::convection(&u_l[k], &d_bar_series[k])?, 1.0);
            r3.add_assign_scaled(&crate::terms::convection(&u_bar[k], &d_l[k])?, 1.0);
            // R4, R5 from the gradient pairings
            let e_lb = crate::terms::grad_inner(&d_l[k], &d_bar_series[k])?;
            let e_bb = crate::terms::grad_inner(&d_bar_series[k], &d_bar_series[k])?;
            let mut mixed = st.e_ll.clone();
            mixed.add_assign_scaled(&e_lb, 2.0);
            let r4 = crate::terms::scalar_times_const(&mixed, d_bar);
            let mut r5 = crate::terms::scalar_times_vector(&mixed, &d_l[k]);
            r5.add_assign_scaled(
                &crate::terms::scalar_times_vector(&mixed, &d_bar_series[k]),
                1.0,
            );
            r5.add_assign_scaled(&crate::terms::scalar_times_vector(&e_bb, &d_l[k]), 1.0);

            // velocity: -P[ub.grad ub + stress(db)] - P[R1 + R2]
            let mut gu = nonlinear_velocity(&state)?;
            let mut r12 = r1;
            r12.add_assign_scaled(&r2, 1.0);
            let pr12 = leray_project(&r12)?;
            gu.add_assign_scaled(&pr12, -1.0);
            gu.zero_mean();
            // director: core terms - R3 + R4 + R5
            let mut gd = nonlinear_director(&state)?;
            gd.add_assign_scaled(&r3, -1.0);
            gd.add_assign_scaled(&r4, 1.0);
            gd.add_assign_scaled(&r5, 1.0);
            g_u.push(gu);
            g_d.push(gd);
        }
        let mut new_u = duhamel_series(&g_u, &t_grid);
        let mut new_d = duhamel_series(&g_d, &t_grid);
        for f in new_u.iter_mut() {
            *f = leray_project(f)?;
            f.zero_mean();
        }
        for f in new_d.iter_mut() {
            f.zero_mean();
        }

        let diff_u: Vec<SpectralField> =
            new_u.iter().zip(&u_bar).map(|(a, b)| a.sub(b)).collect();
        let diff_d: Vec<SpectralField> =
            new_d.iter().zip(&d_bar_series).map(|(a, b)| a.sub(b)).collect();
        let size = weighted_pair_norms(&new_u, &new_d, &t_grid, cfg.p, cfg.q, dec)?
            .combined(wa, wb);
        let diff = weighted_pair_norms(&diff_u, &diff_d, &t_grid, cfg.p, cfg.q, dec)?
            .combined(wa, wb);
        let ratio = prev_diff.map(|d| if d > 0.0 { diff / d } else { 0.0 });
        trace.records.push(IterationRecord { iter, size, diff, ratio });

        u_bar = new_u;
        d_bar_series = new_d;

        if !diff.is_finite() || !size.is_finite() {
            outcome = PicardOutcome::NonContracting;
            break;
        }
        if diff <= cfg.contraction_tol {
            outcome = PicardOutcome::Converged;
            break;
        }
        if let Some(r) = ratio {
            if r >= 1.0 && iter >= 3 {
                outcome = PicardOutcome::NonContracting;
                break;
            }
        }
        prev_diff = Some(diff);
    }

    let u: Vec<SpectralField> =
        u_l.iter().zip(&u_bar).map(|(l, b)| l.add(b)).collect();
    let delta: Vec<SpectralField> =
        d_l.iter().zip(&d_bar_series).map(|(l, b)| l.add(b)).collect();
    Ok((
        PicardSolution {
            t_grid,
            u,
            delta,
            u_bar,
            delta_bar: d_bar_series,
            d_bar,
            outcome,
        },
        trace,
    ))
}
