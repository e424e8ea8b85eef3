//! Fixed-point iteration suite: geometric contraction on small data,
//! cross-method agreement with the time marcher, and the large-data
//! negative control. A non-contracting run retries on a halved horizon.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::{GridSpec, SpectralField};
use gvlc_solver::etd::march;
use gvlc_solver::initdata::{random_director_deviation, random_divfree_velocity};
use gvlc_solver::picard::{picard_solve, weighted_pair_norms, PicardConfig, PicardOutcome};
use gvlc_solver::{SolverState, StepOptions};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::{ExperimentReport, SeriesWriter};

/// Contraction acceptance margin on successive-difference ratios.
pub const RATIO_BOUND: f64 = 0.75;
/// Cross-method agreement bound.
pub const MARCH_DISTANCE_BOUND: f64 = 1e-5;
/// Negative-control amplitudes (the torus heat factors are strongly
/// contracting, so the failing regime needs large data).
pub const LARGE_U_NORM: f64 = 150.0;
pub const LARGE_D_NORM: f64 = 100.0;

fn picard_cfg(cfg: &ExperimentConfig) -> PicardConfig {
    PicardConfig {
        max_iters: cfg.picard.max_iters,
        contraction_tol: cfg.picard.contraction_tol,
        horizon: cfg.picard.horizon,
        steps: cfg.picard.steps,
        p: cfg.norms.p,
        q: cfg.norms.q,
        eps_smallness: cfg.picard.eps_smallness,
        zeta: cfg.picard.zeta,
        c0: cfg.picard.c0,
        c1: cfg.picard.c1,
    }
}

pub fn run_picard_contraction(cfg: &ExperimentConfig) -> Result<(ExperimentReport, SeriesWriter)> {
    let mut report = ExperimentReport::new("picard", cfg.initial_data.seed);
    let mut series = SeriesWriter::default();
    let spec = GridSpec::new(cfg.grid.dim, cfg.grid.n, cfg.grid.box_length)?;
    let dec = DyadicDecomposition::build_cutoffs(spec)?;
    let id = &cfg.initial_data;
    let u0 = random_divfree_velocity(spec, id.seed, id.u_norm, id.band, cfg.norms.p, &dec)?;
    let d0 = random_director_deviation(
        spec,
        id.seed,
        id.delta_norm,
        id.band,
        cfg.norms.q,
        id.d_bar,
        &dec,
    )?;

    // small-data iteration, with the horizon-halving retry path
    let mut pcfg = picard_cfg(cfg);
    let mut retries = 0usize;
    let (sol, trace) = loop {
        let (sol, trace) = picard_solve(&u0, &d0, id.d_bar, &pcfg, &dec)?;
        if sol.outcome != PicardOutcome::NonContracting || retries >= cfg.picard.max_retries {
            break (sol, trace);
        }
        retries += 1;
        pcfg.horizon *= 0.5;
        pcfg.steps = (pcfg.steps / 2).max(16);
    };
    report.log_value("picard-retries", "horizon halvings before contraction", retries as f64);
    report.push_flag(
        "picard-contracting",
        "small-data iteration contracts",
        sol.outcome != PicardOutcome::NonContracting,
    );
    let mut worst_ratio = 0.0f64;
    for rec in &trace.records {
        series.push(rec.iter as f64, "picard_diff", rec.diff);
        if let Some(r) = rec.ratio {
            series.push(rec.iter as f64, "picard_ratio", r);
            worst_ratio = worst_ratio.max(r);
        }
    }
    report.push_le(
        "picard-ratio-bound",
        "successive-difference ratios from the second iterate",
        worst_ratio,
        RATIO_BOUND,
    );

    // cross-method agreement with the marcher at matched resolution
    {
        let state = SolverState::new(u0.clone(), d0.clone(), id.d_bar)?;
        let opts = StepOptions { guard_c: cfg.solver.guard_c, ..StepOptions::default() };
        let run = march(&state, pcfg.horizon, pcfg.steps, &opts)?;
        let diff_u: Vec<SpectralField> =
            sol.u.iter().zip(&run).map(|(a, s)| a.sub(&s.u)).collect();
        let diff_d: Vec<SpectralField> =
            sol.delta.iter().zip(&run).map(|(a, s)| a.sub(&s.delta)).collect();
        let dist = weighted_pair_norms(&diff_u, &diff_d, &sol.t_grid, cfg.norms.p, cfg.norms.q, &dec)?
            .combined(trace.weight_a, trace.weight_b);
        report.push_le(
            "picard-vs-marching",
            "weighted distance between the iteration limit and the marcher",
            dist,
            MARCH_DISTANCE_BOUND,
        );
    }

    // negative control: large data must be flagged
    {
        let ul = random_divfree_velocity(spec, id.seed, LARGE_U_NORM, id.band, cfg.norms.p, &dec)?;
        let dl = random_director_deviation(
            spec,
            id.seed,
            LARGE_D_NORM,
            id.band,
            cfg.norms.q,
            id.d_bar,
            &dec,
        )?;
        let ncfg = PicardConfig { max_iters: 8, steps: 32, ..picard_cfg(cfg) };
        let (nsol, ntrace) = picard_solve(&ul, &dl, id.d_bar, &ncfg, &dec)?;
        for rec in &ntrace.records {
            if let Some(r) = rec.ratio {
                series.push(rec.iter as f64, "picard_large_ratio", r);
            }
        }
        report.push_flag(
            "picard-negative-control",
            "large-data iteration flagged non-contracting",
            nsol.outcome == PicardOutcome::NonContracting,
        );
    }

    Ok((report, series))
}
