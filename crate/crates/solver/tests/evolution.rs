//! Time-stepping behavior: exact heat decay, observed order, reduction to
//! the pure incompressible system, fixed-point iteration, and monitors.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::norms::{besov_norm, BesovIndex};
use gvlc_core::{Complex64, GridSpec, SpectralField};
use gvlc_solver::etd::{bit_identical, linear_flows, march, max_abs_diff, uniform_grid};
use gvlc_solver::initdata::{random_director_deviation, random_divfree_velocity, taylor_green};
use gvlc_solver::monitor::{blowup_monitor, energy};
use gvlc_solver::nse::nse_rk4_march;
use gvlc_solver::picard::{picard_solve, weighted_pair_norms, PicardConfig, PicardOutcome};
use gvlc_solver::renorm::renormalize_director;
use gvlc_solver::{step_mild, Scheme, SolverState, StepOptions};

const D_BAR: [f64; 3] = [0.0, 0.0, 1.0];

fn grid16() -> (GridSpec, DyadicDecomposition) {
    let spec = GridSpec::torus(3, 16).unwrap();
    (spec, DyadicDecomposition::build_cutoffs(spec).unwrap())
}

fn single_mode_velocity(spec: GridSpec, amp: f64) -> SpectralField {
    // u = (0, amp cos(x1), 0): divergence-free single mode
    let mut uy = SpectralField::zeros(spec, 1);
    uy.set(0, &[1, 0, 0], Complex64::new(amp / 2.0, 0.0));
    uy.set(0, &[-1, 0, 0], Complex64::new(amp / 2.0, 0.0));
    SpectralField::from_components(&[SpectralField::zeros(spec, 1), uy, SpectralField::zeros(spec, 1)])
}

#[test]
fn heat_decay_is_exact_on_single_mode() {
    let (spec, _) = grid16();
    let u = single_mode_velocity(spec, 0.1);
    let state = SolverState::new(u.clone(), SpectralField::zeros(spec, 3), D_BAR).unwrap();
    let dt = 0.01;
    for scheme in [Scheme::Etd1, Scheme::EtdMidpoint] {
        let next = step_mild(&state, dt, &StepOptions { scheme, guard_c: 0.5 }).unwrap();
        let want = u.scaled((-dt).exp());
        assert!(
            max_abs_diff(&next.u, &want) <= 1e-14,
            "heat decay not exact for {scheme:?}"
        );
        assert_eq!(next.delta.max_coeff_abs(), 0.0);
    }
}

#[test]
fn step_guard_fires() {
    let (spec, _) = grid16();
    let u = single_mode_velocity(spec, 5.0);
    let state = SolverState::new(u, SpectralField::zeros(spec, 3), D_BAR).unwrap();
    let r = step_mild(&state, 1.0, &StepOptions { scheme: Scheme::Etd1, guard_c: 0.5 });
    assert!(matches!(r, Err(gvlc_solver::SolverError::StepGuard { .. })));
}

#[test]
fn midpoint_scheme_shows_second_order() {
    let (spec, dec) = grid16();
    let u = random_divfree_velocity(spec, 1, 0.3, 3, 2.0, &dec).unwrap();
    let delta = random_director_deviation(spec, 2, 0.2, 3, 2.0, D_BAR, &dec).unwrap();
    let state = SolverState::new(u, delta, D_BAR).unwrap();
    let t_end = 0.08;
    let opts = StepOptions { scheme: Scheme::EtdMidpoint, guard_c: 1.0 };
    let fine = march(&state, t_end, 64, &opts).unwrap();
    let refsol = &fine.last().unwrap().u;
    let mut errs = Vec::new();
    for steps in [8usize, 16, 32] {
        let run = march(&state, t_end, steps, &opts).unwrap();
        errs.push(max_abs_diff(&run.last().unwrap().u, refsol));
    }
    let order1 = (errs[0] / errs[1]).log2();
    let order2 = (errs[1] / errs[2]).log2();
    assert!(
        order1 > 1.8 && order2 > 1.8,
        "observed orders {order1:.2}, {order2:.2} (errors {errs:?})"
    );
}

#[test]
fn reduction_to_navier_stokes() {
    // delta0 = 0: the director stays exactly zero and the velocity path is
    // bit-identical to a run with the director terms never contributing
    let (spec, dec) = grid16();
    let u0 = random_divfree_velocity(spec, 5, 0.3, 3, 2.0, &dec).unwrap();
    let state = SolverState::new(u0.clone(), SpectralField::zeros(spec, 3), D_BAR).unwrap();
    let opts = StepOptions::default();
    let run = march(&state, 0.05, 25, &opts).unwrap();
    for s in &run {
        assert_eq!(s.delta.max_coeff_abs(), 0.0, "director grew from zero");
    }

    // fine-step independent reference (rotational form, IF-RK4)
    let reference = nse_rk4_march(&u0, 0.05, 100).unwrap();
    let err = max_abs_diff(&run.last().unwrap().u, reference.last().unwrap());
    let scale = u0.max_coeff_abs();
    assert!(err / scale <= 1e-6, "NSE reduction err {:.3e}", err / scale);
}

#[test]
fn energy_is_nonincreasing_on_small_data() {
    let (spec, dec) = grid16();
    let u = random_divfree_velocity(spec, 9, 0.2, 3, 2.0, &dec).unwrap();
    let delta = random_director_deviation(spec, 10, 0.15, 3, 2.0, D_BAR, &dec).unwrap();
    let state = SolverState::new(u, delta, D_BAR).unwrap();
    let run = march(&state, 0.2, 50, &StepOptions::default()).unwrap();
    let mut prev = f64::INFINITY;
    for s in &run {
        let e = energy(&s.u, &s.delta).unwrap();
        assert!(e <= prev * (1.0 + 1e-8), "energy grew: {e} after {prev}");
        prev = e;
    }
}

#[test]
fn linear_flow_snapshots_and_smallness_window() {
    let (spec, dec) = grid16();
    let u0 = random_divfree_velocity(spec, 11, 0.5, 3, 2.0, &dec).unwrap();
    let d0 = random_director_deviation(spec, 12, 0.5, 3, 2.0, D_BAR, &dec).unwrap();
    let grid = uniform_grid(0.5, 32);
    let (ul, dl) = linear_flows(&u0, &d0, &grid);
    assert!(bit_identical(&ul[0], &u0));
    assert!(bit_identical(&dl[0], &d0));

    // the integral-norm tail over [0, T] decreases monotonically to 0 as T -> 0
    let mut tails = Vec::new();
    let mut prev = f64::INFINITY;
    for steps in [64usize, 32, 16, 8, 4, 2] {
        let t = 0.5 * steps as f64 / 64.0;
        let g = uniform_grid(t, steps);
        let (ul_t, dl_t) = linear_flows(&u0, &d0, &g);
        let n = weighted_pair_norms(&ul_t, &dl_t, &g, 2.0, 2.0, &dec).unwrap();
        let tail = n.u_int + n.d_int;
        assert!(tail <= prev + 1e-12, "tail {tail} grew at T={t}");
        prev = tail;
        tails.push(tail);
    }
    // shrinks to a small fraction of its horizon value as T -> 0
    assert!(
        *tails.last().unwrap() < 0.2 * tails[0],
        "tail did not shrink: {tails:?}"
    );
}

#[test]
fn picard_zero_data_stays_zero() {
    let (spec, dec) = grid16();
    let zero = SpectralField::zeros(spec, 3);
    let cfg = PicardConfig { steps: 16, max_iters: 4, horizon: 0.1, ..Default::default() };
    let (sol, trace) = picard_solve(&zero, &zero, D_BAR, &cfg, &dec).unwrap();
    assert_eq!(sol.outcome, PicardOutcome::Converged);
    for rec in &trace.records {
        assert_eq!(rec.diff, 0.0);
    }
    for f in &sol.u {
        assert_eq!(f.max_coeff_abs(), 0.0);
    }
}

#[test]
fn picard_contracts_on_small_data_and_matches_marching() {
    let (spec, dec) = grid16();
    let u0 = random_divfree_velocity(spec, 21, 0.03, 3, 2.0, &dec).unwrap();
    let d0 = random_director_deviation(spec, 22, 0.02, 3, 2.0, D_BAR, &dec).unwrap();
    let cfg = PicardConfig {
        steps: 96,
        horizon: 0.25,
        max_iters: 10,
        contraction_tol: 1e-13,
        ..Default::default()
    };
    let (sol, trace) = picard_solve(&u0, &d0, D_BAR, &cfg, &dec).unwrap();
    assert_ne!(sol.outcome, PicardOutcome::NonContracting);
    // successive differences decrease geometrically from the second iterate
    for rec in trace.records.iter().skip(1) {
        if let Some(r) = rec.ratio {
            assert!(r <= 0.75, "ratio {r} at iterate {}", rec.iter);
        }
    }

    // cross-method agreement with the time marcher at matched resolution
    let state = SolverState::new(u0.clone(), d0.clone(), D_BAR).unwrap();
    let run = march(&state, cfg.horizon, cfg.steps, &StepOptions::default()).unwrap();
    let diff_u: Vec<SpectralField> = sol
        .u
        .iter()
        .zip(&run)
        .map(|(a, s)| a.sub(&s.u))
        .collect();
    let diff_d: Vec<SpectralField> = sol
        .delta
        .iter()
        .zip(&run)
        .map(|(a, s)| a.sub(&s.delta))
        .collect();
    let dist = weighted_pair_norms(&diff_u, &diff_d, &sol.t_grid, 2.0, 2.0, &dec)
        .unwrap()
        .combined(trace.weight_a, trace.weight_b);
    assert!(dist <= 1e-5, "picard-vs-marching distance {dist:.3e}");
}

#[test]
fn picard_flags_large_data() {
    let (spec, dec) = grid16();
    // on the torus the spectral gap makes the heat factors strongly
    // contracting, so the failing regime needs genuinely large data
    let u0 = random_divfree_velocity(spec, 31, 150.0, 3, 2.0, &dec).unwrap();
    let d0 = random_director_deviation(spec, 32, 100.0, 3, 2.0, D_BAR, &dec).unwrap();
    let cfg = PicardConfig { steps: 32, horizon: 0.25, max_iters: 8, ..Default::default() };
    let (sol, trace) = picard_solve(&u0, &d0, D_BAR, &cfg, &dec).unwrap();
    assert_eq!(sol.outcome, PicardOutcome::NonContracting, "trace: {:?}", trace.records);
}

#[test]
fn blowup_monitor_trends() {
    let (spec, dec) = grid16();
    let u0 = random_divfree_velocity(spec, 41, 0.05, 3, 2.0, &dec).unwrap();
    let d0 = random_director_deviation(spec, 42, 0.04, 3, 2.0, D_BAR, &dec).unwrap();

    // zero series: identically zero quantity
    let grid = uniform_grid(0.4, 16);
    let zeros: Vec<SpectralField> = (0..17).map(|_| SpectralField::zeros(spec, 3)).collect();
    let z = blowup_monitor(&zeros, &zeros, &grid, 2.0, 2.0, 1.0, &dec).unwrap();
    assert_eq!(z.prefix_values.last().unwrap().1, 0.0);
    assert!(!z.flagged_increasing);

    // decaying heat series: flat trend
    let (ul, dl) = linear_flows(&u0, &d0, &grid);
    let r = blowup_monitor(&ul, &dl, &grid, 2.0, 2.0, 1.0, &dec).unwrap();
    assert!(!r.flagged_increasing, "growth ratio {}", r.growth_ratio);

    // synthetic inflation: flagged
    let infl_u: Vec<SpectralField> =
        grid.iter().map(|&t| u0.scaled((6.0 * t).exp())).collect();
    let infl_d: Vec<SpectralField> =
        grid.iter().map(|&t| d0.scaled((6.0 * t).exp())).collect();
    let f = blowup_monitor(&infl_u, &infl_d, &grid, 2.0, 2.0, 1.0, &dec).unwrap();
    assert!(f.flagged_increasing, "growth ratio {}", f.growth_ratio);
}

#[test]
fn renormalization_behavior() {
    let (spec, dec) = grid16();
    // delta = 0: d = d_bar exactly unit, projection changes nothing
    let state = SolverState::new(
        SpectralField::zeros(spec, 3),
        SpectralField::zeros(spec, 3),
        D_BAR,
    )
    .unwrap();
    let (same, stats) = renormalize_director(&state).unwrap();
    assert!(same.delta.max_coeff_abs() <= 1e-15);
    assert!(stats.drift_before <= 1e-15);

    // uniform inflation: d = (1 + 1e-6) d_bar rescales exactly back
    let mut delta = SpectralField::zeros(spec, 3);
    delta.set(2, &[0, 0, 0], Complex64::new(1e-6, 0.0));
    let mut st = state.clone();
    st.delta = delta;
    let (fixed, stats) = renormalize_director(&st).unwrap();
    assert!((stats.drift_before - 1e-6).abs() < 1e-12);
    assert!(fixed.delta.max_coeff_abs() <= 1e-15);

    // small-data run: renormalization on vs off stays consistent
    let u0 = random_divfree_velocity(spec, 51, 0.1, 3, 2.0, &dec).unwrap();
    let d0 = random_director_deviation(spec, 52, 0.05, 3, 2.0, D_BAR, &dec).unwrap();
    let s0 = SolverState::new(u0, d0, D_BAR).unwrap();
    let opts = StepOptions::default();
    let plain = march(&s0, 0.5, 100, &opts).unwrap();
    let mut renormed = s0.clone();
    let dt = 0.5 / 100.0;
    for _ in 0..100 {
        renormed = step_mild(&renormed, dt, &opts).unwrap();
        let (r, _) = renormalize_director(&renormed).unwrap();
        renormed = r;
    }
    let du = max_abs_diff(&plain.last().unwrap().u, &renormed.u);
    assert!(du <= 1e-4, "renormalization changed velocity by {du:.2e}");

    // degenerate director aborts
    let mut big = SpectralField::zeros(spec, 3);
    big.set(2, &[0, 0, 0], Complex64::new(-0.9, 0.0));
    let mut bad = state.clone();
    bad.delta = big;
    assert!(matches!(
        renormalize_director(&bad),
        Err(gvlc_solver::SolverError::DirectorDegenerate { .. })
    ));
}

#[test]
fn besov_norm_of_initial_data_hits_target() {
    let (spec, dec) = grid16();
    let u = random_divfree_velocity(spec, 61, 0.03, 3, 2.0, &dec).unwrap();
    let n = besov_norm(&u, BesovIndex::new(0.5, 2.0, 1.0), &dec);
    assert!((n - 0.03).abs() <= 1e-12);
    let d = random_director_deviation(spec, 62, 0.02, 3, 2.0, D_BAR, &dec).unwrap();
    let nd = besov_norm(&d, BesovIndex::new(1.5, 2.0, 1.0), &dec);
    assert!((nd - 0.02).abs() <= 1e-12);
    // orthogonality of the deviation direction to d_bar in physical space
    let phys = gvlc_core::transform::inverse_transform(&d);
    let pts = spec.points();
    for x in (0..pts).step_by(97) {
        let dot: f64 = (0..3).map(|c| phys[c * pts + x].re * D_BAR[c]).sum();
        assert!(dot.abs() < 1e-12);
    }
    let tg = taylor_green(spec, 0.3).unwrap();
    assert!(gvlc_core::ops::divergence_sup(&tg).unwrap() < 1e-13);
}
