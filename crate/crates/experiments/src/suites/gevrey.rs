//! Small-data tracking run: exponentially weighted norm boundedness, the
//! fitted spectral radius against the `sqrt(t)` envelope, the growth
//! monitor, the heat-only slope control, and the derivative decay checks
//! that reuse the same trajectory.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::gevrey::{gevrey_besov_norm, heat_semigroup, spectral_slope};
use gvlc_core::norms::{besov_norm, BesovIndex};
use gvlc_core::ops::apply_multiplier;
use gvlc_core::symbol::RealSymbol;
use gvlc_core::{GridSpec, SpectralField};
use gvlc_solver::etd::uniform_grid;
use gvlc_solver::initdata::{
    exponential_spectrum_velocity, random_director_deviation, random_divfree_velocity,
};
use gvlc_solver::monitor::{blowup_monitor, energy};
use gvlc_solver::renorm::renormalize_director;
use gvlc_solver::{Scheme, SolverState, StepOptions};

use crate::config::ExperimentConfig;
use crate::error::{ExperimentError, Result};
use crate::report::{BlockNormWriter, ExperimentReport, SeriesWriter};

/// Weighted-norm boundedness margin of the tracking run.
pub const GEVREY_NORM_FACTOR: f64 = 10.0;
/// Radius floor factor against `sqrt(t)`.
pub const RADIUS_FLOOR_FACTOR: f64 = 0.9;
/// Scaled derivative-decay margin.
pub const DECAY_FACTOR: f64 = 20.0;

/// Frozen self-regression values of the seed-42 default run (recorded once
/// the oracle-backed checks passed): final weighted norm, fitted radius,
/// and final energy.
pub const REGRESSION_SEED42: Option<(f64, f64, f64)> =
    Some((0.009612106894309323, 2.984555244324292, 9.584530464264738e-7));

pub struct TrackedRun {
    pub t_grid: Vec<f64>,
    pub samples: Vec<(f64, SolverState)>,
    pub m0: f64,
    pub dec: DyadicDecomposition,
    pub spec: GridSpec,
}

/// March the configured small-data run and keep snapshots at the sample times.
pub fn tracked_run(cfg: &ExperimentConfig) -> Result<TrackedRun> {
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
    let m0 = id.u_norm + id.delta_norm;
    let state = SolverState::new(u0, d0, id.d_bar)?;
    let scheme = if cfg.solver.scheme == "etd1" { Scheme::Etd1 } else { Scheme::EtdMidpoint };
    let opts = StepOptions { scheme, guard_c: cfg.solver.guard_c };

    let t_grid = uniform_grid(cfg.solver.t_end, cfg.solver.steps);
    let mut snapshots = Vec::with_capacity(t_grid.len());
    let mut cur = state;
    snapshots.push(cur.clone());
    let dt = cfg.solver.t_end / cfg.solver.steps as f64;
    for _ in 0..cfg.solver.steps {
        cur = gvlc_solver::step_mild(&cur, dt, &opts)?;
        if cfg.solver.renormalize {
            let (r, _) = renormalize_director(&cur)?;
            cur = r;
        }
        snapshots.push(cur.clone());
    }

    let mut samples = Vec::new();
    for &ts in &cfg.norms.sample_times {
        let idx = ((ts / cfg.solver.t_end) * cfg.solver.steps as f64).round() as usize;
        let idx = idx.min(cfg.solver.steps);
        samples.push((t_grid[idx], snapshots[idx].clone()));
    }
    // keep the full path only as samples plus endpoints to bound memory
    Ok(TrackedRun { t_grid, samples, m0, dec, spec })
}

pub fn run_gevrey_tracking(
    cfg: &ExperimentConfig,
    run: &TrackedRun,
) -> Result<(ExperimentReport, SeriesWriter, BlockNormWriter)> {
    let mut report = ExperimentReport::new("gevrey", cfg.initial_data.seed);
    let mut series = SeriesWriter::default();
    let mut blocks = BlockNormWriter::default();
    let dec = &run.dec;
    let (p, q) = (cfg.norms.p, cfg.norms.q);
    let idx_u = BesovIndex::new(3.0 / p - 1.0, p, 1.0);
    let idx_d = BesovIndex::new(3.0 / q, q, 1.0);

    // (a) weighted norm boundedness along the run
    let mut worst = 0.0f64;
    for (t, s) in &run.samples {
        let (nu, mode_u) = gevrey_besov_norm(&s.u, *t, idx_u, dec);
        let (nd, _) = gevrey_besov_norm(&s.delta, *t, idx_d, dec);
        let total = nu.value() + nd.value();
        series.push(*t, "gevrey_weighted_norm", total);
        series.push(*t, "weight_mode_linear", if mode_u == gvlc_core::gevrey::WeightMode::Linear { 1.0 } else { 0.0 });
        for (j, b) in gvlc_core::norms::block_norms(&s.u, p, dec) {
            blocks.push(*t, j, b);
        }
        worst = worst.max(total);
    }
    report.push_le(
        "gevrey-norm-bound",
        "weighted norms of (u, delta) along the run vs 10 * M0",
        worst,
        GEVREY_NORM_FACTOR * run.m0,
    );

    // (b) fitted decay radius against the sqrt(t) envelope
    let mut min_margin = f64::INFINITY;
    for (t, s) in &run.samples {
        if *t < 0.05 - 1e-12 {
            continue;
        }
        let fit = spectral_slope(&s.u, 0.7)?;
        let radius = -fit.slope;
        series.push(*t, "spectral_radius_u", radius);
        series.push(*t, "spectral_fit_residual", fit.residual);
        min_margin = min_margin.min(radius - RADIUS_FLOOR_FACTOR * t.sqrt());
        let fit_d = spectral_slope(&s.delta, 0.7)?;
        series.push(*t, "spectral_radius_delta", -fit_d.slope);
        min_margin = min_margin.min(-fit_d.slope - RADIUS_FLOOR_FACTOR * t.sqrt());
    }
    report.push_ge(
        "gevrey-radius-floor",
        "fitted decay radius minus 0.9 sqrt(t), worst sample",
        min_margin,
        0.0,
    );

    // (c) growth monitor stays flat
    {
        let (u_series, d_series): (Vec<_>, Vec<_>) = run
            .samples
            .iter()
            .map(|(_, s)| (s.u.clone(), s.delta.clone()))
            .unzip();
        let times: Vec<f64> = run.samples.iter().map(|(t, _)| *t).collect();
        let rep = blowup_monitor(&u_series, &d_series, &times, p, q, cfg.norms.theta, dec)?;
        series.push(
            *times.last().unwrap(),
            "blowup_quantity",
            rep.prefix_values.last().unwrap().1,
        );
        report.log_value("gevrey-monitor-growth-ratio", "late/early increment ratio", rep.growth_ratio);
        report.push_flag(
            "gevrey-monitor-flat",
            "continuation quantity shows no growth trend",
            !rep.flagged_increasing,
        );
    }

    // heat-only control: disable the nonlinearity and compare the fitted
    // slope against the same fit on the closed-form spectrum
    {
        let u0 = exponential_spectrum_velocity(run.spec, cfg.initial_data.seed, 0.01)?;
        let t_ctl = 0.25;
        let steps = 64;
        let mut flow = u0.clone();
        for _ in 0..steps {
            flow = heat_semigroup(&flow, t_ctl / steps as f64);
        }
        let measured = -spectral_slope(&flow, 0.7)?.slope;
        let closed = heat_semigroup(&u0, t_ctl);
        let analytic = -spectral_slope(&closed, 0.7)?.slope;
        series.push(t_ctl, "heat_control_radius_measured", measured);
        series.push(t_ctl, "heat_control_radius_analytic", analytic);
        report.push_le(
            "gevrey-heat-control",
            "heat-only fitted slope vs closed-form spectrum fit",
            (measured / analytic - 1.0).abs(),
            0.02,
        );
    }

    // negative control: a white-noise spectrum must fail the analyticity
    // check (flat fit, large residual)
    {
        let mut state = cfg.initial_data.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 0.5 + 0.5
        };
        let mut noise = SpectralField::zeros(run.spec, 1);
        let kmax = run.spec.dealias_kmax();
        let spec_copy = run.spec;
        for (off, k) in spec_copy.iter_k() {
            if k[..3].iter().any(|ki| ki.abs() > kmax) || k[..3].iter().all(|&ki| ki == 0) {
                continue;
            }
            noise.coeffs_mut()[off] = gvlc_core::Complex64::new(next(), 0.0);
        }
        let fit = spectral_slope(&noise, 1.0)?;
        let radius = -fit.slope;
        series.push(0.25, "white_noise_radius", radius);
        report.push_flag(
            "gevrey-white-noise-control",
            "white-noise spectrum fails the analyticity floor",
            radius < RADIUS_FLOOR_FACTOR * 0.25f64.sqrt(),
        );
    }

    // energy balance along the samples (monitored)
    {
        let mut prev = f64::INFINITY;
        let mut worst_growth = 0.0f64;
        for (t, s) in &run.samples {
            let e = energy(&s.u, &s.delta)?;
            series.push(*t, "energy", e);
            if e > prev {
                worst_growth = worst_growth.max((e - prev) / prev.max(1e-300));
            }
            prev = e;
        }
        report.push_le(
            "gevrey-energy-monotone",
            "relative energy growth between samples",
            worst_growth,
            1e-8,
        );
    }

    // frozen regression of the default seed-42 trajectory
    let default_cfg = crate::config::ExperimentConfig::default();
    let is_default_run = cfg.initial_data.seed == 42
        && cfg.grid.n == default_cfg.grid.n
        && cfg.grid.dim == default_cfg.grid.dim
        && cfg.solver.t_end == default_cfg.solver.t_end
        && cfg.solver.steps == default_cfg.solver.steps
        && cfg.solver.scheme == default_cfg.solver.scheme
        && cfg.initial_data.u_norm == default_cfg.initial_data.u_norm
        && cfg.initial_data.delta_norm == default_cfg.initial_data.delta_norm
        && cfg.initial_data.band == default_cfg.initial_data.band;
    if is_default_run {
        if let Some((norm_end, slope_end, energy_end)) = REGRESSION_SEED42 {
            let (t, s) = run.samples.last().unwrap();
            let (nu, _) = gevrey_besov_norm(&s.u, *t, idx_u, dec);
            let (nd, _) = gevrey_besov_norm(&s.delta, *t, idx_d, dec);
            let total = nu.value() + nd.value();
            let slope = -spectral_slope(&s.u, 0.7)?.slope;
            let e = energy(&s.u, &s.delta)?;
            report.push_le(
                "gevrey-regression-norm",
                "final weighted norm vs frozen value",
                (total / norm_end - 1.0).abs(),
                1e-6,
            );
            report.push_le(
                "gevrey-regression-slope",
                "final fitted radius vs frozen value",
                (slope / slope_end - 1.0).abs(),
                1e-6,
            );
            report.push_le(
                "gevrey-regression-energy",
                "final energy vs frozen value",
                (e / energy_end - 1.0).abs(),
                1e-6,
            );
        }
    }

    Ok((report, series, blocks))
}

pub fn run_decay_experiment(
    cfg: &ExperimentConfig,
    run: &TrackedRun,
) -> Result<(ExperimentReport, SeriesWriter)> {
    let mut report = ExperimentReport::new("decay", cfg.initial_data.seed);
    let mut series = SeriesWriter::default();
    let dec = &run.dec;
    let p = cfg.norms.p;
    let idx_u = BesovIndex::new(3.0 / p - 1.0, p, 1.0);
    let decay_times: Vec<f64> = run
        .samples
        .iter()
        .map(|(t, _)| *t)
        .filter(|&t| t >= 0.05 - 1e-12 && t <= 0.4 + 1e-12)
        .collect();
    if decay_times.len() < 3 {
        return Err(ExperimentError::Config(
            "decay experiment needs sample times in [0.05, 0.4]".into(),
        ));
    }
    // the small-t envelope is fitted before viscous decay dominates
    let envelope_times: Vec<f64> = run
        .samples
        .iter()
        .map(|(t, _)| *t)
        .filter(|&t| t > 0.0 && t <= 0.045)
        .collect();
    if envelope_times.len() < 3 {
        return Err(ExperimentError::Config(
            "decay experiment needs sample times below 0.045 for the envelope fit".into(),
        ));
    }

    for &m in &cfg.norms.m_orders {
        let sym = RealSymbol(move |xi: &[f64]| gvlc_core::symbol::xi_l2(xi).powi(m as i32));
        let mut sup_scaled = 0.0f64;
        let mut pts = Vec::new();
        for (t, s) in &run.samples {
            let early = envelope_times.contains(t);
            let in_window = decay_times.contains(t);
            if !early && !in_window {
                continue;
            }
            let lam_u = apply_multiplier(&s.u, &sym)?;
            let norm = besov_norm(&lam_u, idx_u, dec);
            series.push(*t, &format!("derivative_norm_m{m}"), norm);
            if in_window {
                sup_scaled = sup_scaled.max(t.powf(m as f64 / 2.0) * norm);
            }
            if early {
                pts.push((t.ln(), norm.ln()));
            }
        }
        report.push_le(
            &format!("decay-scaled-bound-m{m}"),
            "sup_t t^{m/2} derivative norm vs 20 * M0",
            sup_scaled,
            DECAY_FACTOR * run.m0,
        );
        // log-log envelope slope of the early-time decay
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        series.push(0.0, &format!("decay_loglog_slope_m{m}"), slope);
        report.push_ge(
            &format!("decay-envelope-slope-m{m}"),
            "log-log slope of the derivative norm vs -m/2 - 0.2",
            slope,
            -(m as f64) / 2.0 - 0.2,
        );
    }

    // heat-only eigenmode control: the scaled quantity follows the closed form
    {
        let spec = run.spec;
        let mut u0 = SpectralField::zeros(spec, 3);
        u0.set(1, &[1, 0, 0], gvlc_core::Complex64::new(0.05, 0.0));
        u0.set(1, &[-1, 0, 0], gvlc_core::Complex64::new(0.05, 0.0));
        let base = besov_norm(&u0, idx_u, dec);
        let mut worst = 0.0f64;
        for &t in &[0.05, 0.1, 0.2, 0.4] {
            let flow = heat_semigroup(&u0, t);
            for m in [0u32, 1, 2] {
                let sym = RealSymbol(move |xi: &[f64]| gvlc_core::symbol::xi_l2(xi).powi(m as i32));
                let lam = apply_multiplier(&flow, &sym)?;
                let got = besov_norm(&lam, idx_u, dec);
                // |k| = 1 eigenmode: Lam^m e^{t Lap} u0 = e^{-t} u0
                let want = (-t).exp() * base;
                worst = worst.max((got - want).abs() / want);
            }
        }
        report.push_le(
            "decay-eigenmode-control",
            "single-mode heat decay matches the closed form",
            worst,
            1e-6,
        );
    }

    Ok((report, series))
}
