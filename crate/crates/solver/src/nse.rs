//! Standalone incompressible Navier-Stokes reference: rotational-form
//! nonlinearity (an algebraically independent route to the convective term
//! for divergence-free fields, since the gradient part dies under the
//! projection) and an integrating-factor RK4 marcher for fine-step
//! reference trajectories.

use gvlc_core::gevrey::heat_semigroup;
use gvlc_core::ops::{leray_project, partial};
use gvlc_core::transform::{forward_transform_complex, inverse_transform};
use gvlc_core::{Complex64, SpectralField};

use crate::error::Result;

/// `-P[omega x u]` with `omega = curl u`; equals `-P[u . grad u]` on
/// divergence-free fields after dealiasing.
pub fn nse_nonlinearity_rotational(u: &SpectralField) -> Result<SpectralField> {
    let spec = u.spec;
    assert_eq!(spec.dim, 3);
    let pts = spec.points();
    // omega_i = eps_{ijk} d_j u_k
    let d = |j: usize, c: usize| phys_comp(u, j, c);
    let w1 = sub_vec(&d(1, 2), &d(2, 1));
    let w2 = sub_vec(&d(2, 0), &d(0, 2));
    let w3 = sub_vec(&d(0, 1), &d(1, 0));
    let u_phys = inverse_transform(u);
    let up = |c: usize, x: usize| u_phys[c * pts + x];
    let mut out = vec![Complex64::ZERO; 3 * pts];
    for x in 0..pts {
        // omega x u
        out[x] = w2[x] * up(2, x) - w3[x] * up(1, x);
        out[pts + x] = w3[x] * up(0, x) - w1[x] * up(2, x);
        out[2 * pts + x] = w1[x] * up(1, x) - w2[x] * up(0, x);
    }
    let mut f = forward_transform_complex(&out, spec, 3).expect("shape");
    f.set_real_symmetric(u.is_real_symmetric());
    f.dealias_in_place();
    let mut g = leray_project(&f)?;
    g.scale(-1.0);
    g.zero_mean();
    Ok(g)
}

fn phys_comp(u: &SpectralField, axis: usize, c: usize) -> Vec<Complex64> {
    inverse_transform(&partial(&u.component_field(c), axis))
}

fn sub_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Integrating-factor RK4 march of `u' = Lap u + N(u)` with the rotational
/// nonlinearity, returning snapshots at every step.
pub fn nse_rk4_march(u0: &SpectralField, t_end: f64, steps: usize) -> Result<Vec<SpectralField>> {
    assert!(steps > 0);
    let dt = t_end / steps as f64;
    let e_half = |f: &SpectralField| heat_semigroup(f, 0.5 * dt);
    let e_full = |f: &SpectralField| heat_semigroup(f, dt);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(u0.clone());
    let mut u = u0.clone();
    for _ in 0..steps {
        let k1 = nse_nonlinearity_rotational(&u)?;
        let mut s = u.clone();
        s.add_assign_scaled(&k1, 0.5 * dt);
        let k2 = nse_nonlinearity_rotational(&e_half(&s))?;
        let mut s = e_half(&u);
        s.add_assign_scaled(&k2, 0.5 * dt);
        let k3 = nse_nonlinearity_rotational(&s)?;
        let mut s = e_half(&u);
        s.add_assign_scaled(&k3, dt);
        let k4 = nse_nonlinearity_rotational(&e_half(&s))?;
        // u_{n+1} = E u + dt/6 (E k1 + 2 E_half (k2 + k3) + k4)
        let mut next = e_full(&u);
        next.add_assign_scaled(&e_full(&k1), dt / 6.0);
        let mut mid = k2;
        mid.add_assign_scaled(&k3, 1.0);
        next.add_assign_scaled(&e_half(&mid), dt / 3.0);
        next.add_assign_scaled(&k4, dt / 6.0);
        let mut next = leray_project(&next)?;
        next.zero_mean();
        u = next;
        out.push(u.clone());
    }
    Ok(out)
}
