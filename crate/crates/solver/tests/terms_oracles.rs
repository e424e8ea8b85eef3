//! Term-level oracles: direct convolution sums, the pointwise stress
//! identity, the algebraic regrouping of the linear-flow coupling terms,
//! and scaling probes.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::{Complex64, GridSpec, SpectralField};
use gvlc_solver::initdata::{random_director_deviation, random_divfree_velocity, taylor_green};
use gvlc_solver::nse::nse_nonlinearity_rotational;
use gvlc_solver::state::SolverState;
use gvlc_solver::terms::{
    elastic_stress_div, elastic_stress_div_alt, grad_inner, nonlinear_director,
    nonlinear_velocity, remainder_terms, scalar_times_const, scalar_times_vector,
};

const D_BAR: [f64; 3] = [0.0, 0.0, 1.0];

fn grid16() -> (GridSpec, DyadicDecomposition) {
    let spec = GridSpec::torus(3, 16).unwrap();
    (spec, DyadicDecomposition::build_cutoffs(spec).unwrap())
}

fn small_state(seed: u64, amp_u: f64, amp_d: f64) -> SolverState {
    let (spec, dec) = grid16();
    let u = random_divfree_velocity(spec, seed, amp_u, 4, 2.0, &dec).unwrap();
    let delta = random_director_deviation(spec, seed + 7, amp_d, 4, 2.0, D_BAR, &dec).unwrap();
    SolverState::new(u, delta, D_BAR).unwrap()
}

/// Exact convolution of two scalar coefficient arrays on the lattice,
/// restricted to the dealiased band (the brute-force product oracle).
fn conv_direct(a: &SpectralField, b: &SpectralField) -> SpectralField {
    let spec = a.spec;
    let half = (spec.n / 2) as i64;
    let kmax = spec.dealias_kmax();
    let mut out = SpectralField::zeros(spec, 1);
    let entries: Vec<(Vec<i64>, Complex64)> = spec
        .iter_k()
        .filter_map(|(off, k)| {
            let v = b.coeffs()[off];
            (v != Complex64::ZERO).then(|| (k[..3].to_vec(), v))
        })
        .collect();
    let spec2 = spec;
    for (off, k) in spec2.iter_k() {
        if k[..3].iter().any(|ki| ki.abs() > kmax) {
            continue;
        }
        let mut acc = Complex64::ZERO;
        for (eta, bv) in &entries {
            let d = [k[0] - eta[0], k[1] - eta[1], k[2] - eta[2]];
            if d.iter().all(|x| (-half..half).contains(x)) {
                let av = a.at(0, &d);
                if av != Complex64::ZERO {
                    acc += av * bv;
                }
            }
        }
        out.coeffs_mut()[off] = acc;
    }
    out
}

#[test]
fn zero_state_gives_zero_forcing() {
    let (spec, _) = grid16();
    let state = SolverState::new(
        SpectralField::zeros(spec, 3),
        SpectralField::zeros(spec, 3),
        D_BAR,
    )
    .unwrap();
    assert_eq!(nonlinear_velocity(&state).unwrap().max_coeff_abs(), 0.0);
    assert_eq!(nonlinear_director(&state).unwrap().max_coeff_abs(), 0.0);
}

#[test]
fn director_forcing_vanishes_without_deviation() {
    let (spec, dec) = grid16();
    let u = random_divfree_velocity(spec, 3, 0.5, 4, 2.0, &dec).unwrap();
    let state = SolverState::new(u, SpectralField::zeros(spec, 3), D_BAR).unwrap();
    assert_eq!(nonlinear_director(&state).unwrap().max_coeff_abs(), 0.0);
}

#[test]
fn velocity_forcing_matches_rotational_oracle_on_taylor_green() {
    // with delta = 0 the velocity forcing is the incompressible convective
    // term; the rotational form is an independent algebraic route
    let (spec, _) = grid16();
    let u = taylor_green(spec, 0.3).unwrap();
    let state = SolverState::new(u.clone(), SpectralField::zeros(spec, 3), D_BAR).unwrap();
    let a = nonlinear_velocity(&state).unwrap();
    let b = nse_nonlinearity_rotational(&u).unwrap();
    let rel = a.sub(&b).max_coeff_abs() / b.max_coeff_abs();
    assert!(rel <= 1e-12, "convective vs rotational rel err {rel}");
}

#[test]
fn velocity_forcing_matches_rotational_oracle_on_random_field() {
    let (spec, dec) = grid16();
    let u = random_divfree_velocity(spec, 11, 0.8, 5, 2.0, &dec).unwrap();
    let state = SolverState::new(u.clone(), SpectralField::zeros(spec, 3), D_BAR).unwrap();
    let a = nonlinear_velocity(&state).unwrap();
    let b = nse_nonlinearity_rotational(&u).unwrap();
    let rel = a.sub(&b).max_coeff_abs() / b.max_coeff_abs();
    assert!(rel <= 1e-12, "convective vs rotational rel err {rel}");
}

#[test]
fn stress_divergence_identity() {
    // div(grad d (x) grad d) = Lap d . grad d + 1/2 grad |grad d|^2
    let (spec, dec) = grid16();
    let delta = random_director_deviation(spec, 5, 1.0, 4, 2.0, D_BAR, &dec).unwrap();
    let a = elastic_stress_div(&delta).unwrap();
    let b = elastic_stress_div_alt(&delta).unwrap();
    let rel = a.sub(&b).max_coeff_abs() / a.max_coeff_abs();
    assert!(rel <= 1e-11, "stress identity rel err {rel}");
}

#[test]
fn director_terms_match_direct_convolution() {
    // u = 0, delta = eps * e * cos(x1): quadratic/cubic mode content checked
    // against the exact convolution sum
    let (spec, _) = grid16();
    let eps = 0.3;
    let mut g = SpectralField::zeros(spec, 1);
    g.set(0, &[1, 0, 0], Complex64::new(eps / 2.0, 0.0));
    g.set(0, &[-1, 0, 0], Complex64::new(eps / 2.0, 0.0));
    let e_dir = [1.0, 0.0, 0.0]; // perpendicular to D_BAR
    let parts: Vec<SpectralField> = (0..3).map(|c| g.scaled(e_dir[c])).collect();
    let delta = SpectralField::from_components(&parts);
    let state = SolverState::new(SpectralField::zeros(spec, 3), delta.clone(), D_BAR).unwrap();

    let got = nonlinear_director(&state).unwrap();

    // oracle: |grad delta|^2 = conv(d1 g, d1 g) on component 0 of the
    // gradient only; then e |grad|^2 (delta + d_bar) by further convolution
    let dg = gvlc_core::ops::partial(&g, 0);
    let e2 = conv_direct(&dg, &dg).dealias();
    let mut want_parts = Vec::new();
    for c in 0..3 {
        let mut cubic = conv_direct(&e2, &delta.component_field(c)).dealias();
        cubic.add_assign_scaled(&e2.scaled(D_BAR[c]), 1.0);
        want_parts.push(cubic);
    }
    let want = SpectralField::from_components(&want_parts);
    let err = got.sub(&want).max_coeff_abs();
    assert!(err <= 1e-13, "direct convolution oracle err {err}");

    // closed-form spot checks: |grad delta|^2 = eps^2 sin^2(x1)
    // = eps^2 (1 - cos(2 x1)) / 2
    let quarter = eps * eps / 4.0;
    assert!((e2.at(0, &[0, 0, 0]).re - 2.0 * quarter).abs() < 1e-14);
    assert!((e2.at(0, &[2, 0, 0]).re + quarter).abs() < 1e-14);
}

#[test]
fn grad_inner_matches_direct_convolution_random() {
    let (spec, dec) = grid16();
    let a = random_director_deviation(spec, 21, 0.7, 4, 2.0, D_BAR, &dec).unwrap();
    let b = random_director_deviation(spec, 22, 0.9, 4, 2.0, D_BAR, &dec).unwrap();
    let got = grad_inner(&a, &b).unwrap();
    let mut want = SpectralField::zeros(spec, 1);
    for j in 0..3 {
        for c in 0..3 {
            let da = gvlc_core::ops::partial(&a.component_field(c), j);
            let db = gvlc_core::ops::partial(&b.component_field(c), j);
            want.add_assign_scaled(&conv_direct(&da, &db), 1.0);
        }
    }
    want.dealias_in_place();
    let rel = got.sub(&want).max_coeff_abs() / want.max_coeff_abs();
    assert!(rel <= 1e-12, "grad_inner oracle rel err {rel}");
}

#[test]
fn director_scaling_probe() {
    // replacing delta -> lam*delta scales the advection linearly and the
    // gradient-square terms quadratically (constant part) / cubically
    let state = small_state(31, 0.4, 0.3);
    let lam = 1.7;
    let e = grad_inner(&state.delta, &state.delta).unwrap();
    let quad = scalar_times_const(&e, D_BAR);
    let cubic = scalar_times_vector(&e, &state.delta);

    let scaled = SolverState::new(state.u.clone(), state.delta.scaled(lam), D_BAR).unwrap();
    let e_s = grad_inner(&scaled.delta, &scaled.delta).unwrap();
    let quad_s = scalar_times_const(&e_s, D_BAR);
    let cubic_s = scalar_times_vector(&e_s, &scaled.delta);

    let q_rel = quad_s.sub(&quad.scaled(lam * lam)).max_coeff_abs() / quad_s.max_coeff_abs();
    let c_rel =
        cubic_s.sub(&cubic.scaled(lam * lam * lam)).max_coeff_abs() / cubic_s.max_coeff_abs();
    assert!(q_rel <= 1e-12, "quadratic scaling rel err {q_rel}");
    assert!(c_rel <= 1e-12, "cubic scaling rel err {c_rel}");

    // advection term scales linearly in delta
    let conv = gvlc_solver::terms::convection(&state.u, &state.delta).unwrap();
    let conv_s = gvlc_solver::terms::convection(&scaled.u, &scaled.delta).unwrap();
    let a_rel = conv_s.sub(&conv.scaled(lam)).max_coeff_abs() / conv_s.max_coeff_abs();
    assert!(a_rel <= 1e-12, "advection scaling rel err {a_rel}");
}

#[test]
fn remainder_terms_vanishing_correction_case() {
    let (spec, dec) = grid16();
    let u_l = random_divfree_velocity(spec, 41, 0.5, 4, 2.0, &dec).unwrap();
    let d_l = random_director_deviation(spec, 42, 0.5, 4, 2.0, D_BAR, &dec).unwrap();
    let zero = SpectralField::zeros(spec, 3);
    let [r1, r2, r3, r4, r5] = remainder_terms(&u_l, &d_l, &zero, &zero, D_BAR).unwrap();

    let conv = gvlc_solver::terms::convection(&u_l, &u_l).unwrap();
    assert!(r1.sub(&conv).max_coeff_abs() <= 1e-14);
    let stress = elastic_stress_div(&d_l).unwrap();
    assert!(r2.sub(&stress).max_coeff_abs() <= 1e-14);
    let conv_d = gvlc_solver::terms::convection(&u_l, &d_l).unwrap();
    assert!(r3.sub(&conv_d).max_coeff_abs() <= 1e-14);
    let e = grad_inner(&d_l, &d_l).unwrap();
    assert!(r4.sub(&scalar_times_const(&e, D_BAR)).max_coeff_abs() <= 1e-14);
    assert!(r5.sub(&scalar_times_vector(&e, &d_l)).max_coeff_abs() <= 1e-14);
}

#[test]
fn remainder_terms_zero_linear_flows() {
    let (spec, dec) = grid16();
    let zero = SpectralField::zeros(spec, 3);
    let ub = random_divfree_velocity(spec, 51, 0.5, 4, 2.0, &dec).unwrap();
    let db = random_director_deviation(spec, 52, 0.5, 4, 2.0, D_BAR, &dec).unwrap();
    let rs = remainder_terms(&zero, &zero, &ub, &db, D_BAR).unwrap();
    for (i, r) in rs.iter().enumerate() {
        assert_eq!(r.max_coeff_abs(), 0.0, "R{} nonzero", i + 1);
    }
}

#[test]
fn remainder_terms_regroup_the_full_nonlinearity() {
    // N(uL + ub, dL + db) - N(ub, db) = the appropriate sum of R terms
    let (spec, dec) = grid16();
    let u_l = random_divfree_velocity(spec, 61, 0.3, 4, 2.0, &dec).unwrap();
    let d_l = random_director_deviation(spec, 62, 0.3, 4, 2.0, D_BAR, &dec).unwrap();
    let u_b = random_divfree_velocity(spec, 63, 0.2, 4, 2.0, &dec).unwrap();
    let d_b = random_director_deviation(spec, 64, 0.2, 4, 2.0, D_BAR, &dec).unwrap();

    let full = SolverState::new(u_l.add(&u_b), d_l.add(&d_b), D_BAR).unwrap();
    let bar = SolverState::new(u_b.clone(), d_b.clone(), D_BAR).unwrap();
    let [r1, r2, r3, r4, r5] = remainder_terms(&u_l, &d_l, &u_b, &d_b, D_BAR).unwrap();

    // velocity: N_u(full) = N_u(bar) - P[R1 + R2]
    let n_full = nonlinear_velocity(&full).unwrap();
    let mut want = nonlinear_velocity(&bar).unwrap();
    let mut r12 = r1;
    r12.add_assign_scaled(&r2, 1.0);
    let mut pr12 = gvlc_core::ops::leray_project(&r12).unwrap();
    pr12.zero_mean();
    want.add_assign_scaled(&pr12, -1.0);
    let rel = n_full.sub(&want).max_coeff_abs() / n_full.max_coeff_abs().max(1e-300);
    assert!(rel <= 1e-11, "velocity regrouping rel err {rel}");

    // director: N_d(full) = N_d(bar) - R3 + R4 + R5
    let n_full = nonlinear_director(&full).unwrap();
    let mut want = nonlinear_director(&bar).unwrap();
    want.add_assign_scaled(&r3, -1.0);
    want.add_assign_scaled(&r4, 1.0);
    want.add_assign_scaled(&r5, 1.0);
    let rel = n_full.sub(&want).max_coeff_abs() / n_full.max_coeff_abs().max(1e-300);
    assert!(rel <= 1e-11, "director regrouping rel err {rel}");
}
