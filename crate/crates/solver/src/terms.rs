//! Pseudospectral evaluation of the nonlinear terms, with the 2/3 rule
//! applied after every physical-space product (quadratic factors are
//! re-band-limited before entering cubic products, so every retained mode
//! carries the exact convolution).

use gvlc_core::ops::{divergence, gradient, laplacian, leray_project, partial};
use gvlc_core::transform::{forward_transform_complex, inverse_transform, product};
use gvlc_core::{Complex64, SpectralField};

use crate::error::Result;
use crate::state::SolverState;

fn phys(f: &SpectralField) -> Vec<Complex64> {
    inverse_transform(f)
}

fn to_spectral(phys: &[Complex64], like: &SpectralField, comps: usize) -> SpectralField {
    let mut f = forward_transform_complex(phys, like.spec, comps).expect("shape");
    f.set_real_symmetric(like.is_real_symmetric());
    f.dealias_in_place();
    f
}

/// Advection `(u . grad) f`, componentwise over `f`.
pub fn convection(u: &SpectralField, f: &SpectralField) -> Result<SpectralField> {
    let spec = u.spec;
    let pts = spec.points();
    let dim = spec.dim;
    let u_phys = phys(u);
    let comps = f.components();
    let mut out = vec![Complex64::ZERO; comps * pts];
    for c in 0..comps {
        let fc = f.component_field(c);
        for j in 0..dim {
            let dj = partial(&fc, j);
            let dj_phys = phys(&dj);
            for x in 0..pts {
                out[c * pts + x] += u_phys[j * pts + x] * dj_phys[x];
            }
        }
    }
    Ok(to_spectral(&out, f, comps))
}

/// `div(grad delta (x) grad delta)`: entry `(i,j)` of the matrix is
/// `sum_c d_i delta_c d_j delta_c`, divergence taken over `j`.
pub fn elastic_stress_div(delta: &SpectralField) -> Result<SpectralField> {
    let spec = delta.spec;
    let pts = spec.points();
    let dim = spec.dim;
    // physical gradients d_i delta_c
    let mut grads = Vec::with_capacity(dim);
    for i in 0..dim {
        grads.push(phys(&partial(delta, i)));
    }
    let comps = delta.components();
    let mut out_parts = Vec::with_capacity(dim);
    for i in 0..dim {
        // row i of the matrix as a dim-component field, then its divergence
        let mut row = vec![Complex64::ZERO; dim * pts];
        for j in 0..dim {
            for c in 0..comps {
                for x in 0..pts {
                    row[j * pts + x] += grads[i][c * pts + x] * grads[j][c * pts + x];
                }
            }
        }
        let row_field = to_spectral(&row, delta, dim);
        out_parts.push(divergence(&row_field)?);
    }
    Ok(SpectralField::from_components(&out_parts))
}

/// The same stress through the pointwise identity
/// `div(grad d (x) grad d) = Lap d . grad d + (1/2) grad |grad d|^2`;
/// an independent route used to cross-check [`elastic_stress_div`].
pub fn elastic_stress_div_alt(delta: &SpectralField) -> Result<SpectralField> {
    let spec = delta.spec;
    let pts = spec.points();
    let dim = spec.dim;
    let lap_phys = phys(&laplacian(delta));
    let comps = delta.components();
    let mut grads = Vec::with_capacity(dim);
    for i in 0..dim {
        grads.push(phys(&partial(delta, i)));
    }
    // (Lap d . grad d)_i = sum_c Lap d_c * d_i d_c
    let mut first = vec![Complex64::ZERO; dim * pts];
    for i in 0..dim {
        for c in 0..comps {
            for x in 0..pts {
                first[i * pts + x] += lap_phys[c * pts + x] * grads[i][c * pts + x];
            }
        }
    }
    let first = to_spectral(&first, delta, dim);
    // (1/2) grad |grad d|^2
    let e = grad_inner(delta, delta)?;
    let half_grad = gradient(&e)?.scaled(0.5);
    Ok(first.add(&half_grad))
}

/// Scalar field `sum_{j,c} d_j a_c d_j b_c` (so `grad_inner(d, d) = |grad d|^2`),
/// dealiased.
pub fn grad_inner(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    let spec = a.spec;
    let pts = spec.points();
    let dim = spec.dim;
    assert_eq!(a.components(), b.components());
    let mut out = vec![Complex64::ZERO; pts];
    for j in 0..dim {
        let da = phys(&partial(a, j));
        let db = phys(&partial(b, j));
        for c in 0..a.components() {
            for x in 0..pts {
                out[x] += da[c * pts + x] * db[c * pts + x];
            }
        }
    }
    let mut f = forward_transform_complex(&out, spec, 1).expect("shape");
    f.set_real_symmetric(a.is_real_symmetric() && b.is_real_symmetric());
    f.dealias_in_place();
    Ok(f)
}

/// Product of a band-limited scalar with each component of a vector field.
pub fn scalar_times_vector(s: &SpectralField, v: &SpectralField) -> SpectralField {
    let parts: Vec<SpectralField> = (0..v.components())
        .map(|c| product(s, &v.component_field(c)))
        .collect();
    SpectralField::from_components(&parts)
}

/// Constant vector times a scalar field.
pub fn scalar_times_const(s: &SpectralField, v: [f64; 3]) -> SpectralField {
    let parts: Vec<SpectralField> = (0..3).map(|c| s.scaled(v[c])).collect();
    SpectralField::from_components(&parts)
}

/// Velocity forcing `-P[ u . grad u + div(grad delta (x) grad delta) ]`.
pub fn nonlinear_velocity(state: &SolverState) -> Result<SpectralField> {
    let conv = convection(&state.u, &state.u)?;
    let stress = elastic_stress_div(&state.delta)?;
    let mut sum = conv.add(&stress);
    sum.scale(-1.0);
    let mut out = leray_project(&sum)?;
    out.zero_mean();
    Ok(out)
}

/// Director forcing `-u . grad delta + |grad delta|^2 delta
/// + |grad delta|^2 d_bar` (the last two recombine to `|grad d|^2 d`).
pub fn nonlinear_director(state: &SolverState) -> Result<SpectralField> {
    let conv = convection(&state.u, &state.delta)?;
    let e = grad_inner(&state.delta, &state.delta)?;
    let cubic = scalar_times_vector(&e, &state.delta);
    let quad = scalar_times_const(&e, state.d_bar);
    let mut out = cubic.add(&quad);
    out.add_assign_scaled(&conv, -1.0);
    Ok(out)
}

/// Cross stress `div(grad a (x) grad b + grad b (x) grad a)`.
pub fn elastic_stress_cross(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    let spec = a.spec;
    let pts = spec.points();
    let dim = spec.dim;
    let comps = a.components();
    let mut ga = Vec::with_capacity(dim);
    let mut gb = Vec::with_capacity(dim);
    for i in 0..dim {
        ga.push(phys(&partial(a, i)));
        gb.push(phys(&partial(b, i)));
    }
    let mut out_parts = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = vec![Complex64::ZERO; dim * pts];
        for j in 0..dim {
            for c in 0..comps {
                for x in 0..pts {
                    row[j * pts + x] += ga[i][c * pts + x] * gb[j][c * pts + x]
                        + gb[i][c * pts + x] * ga[j][c * pts + x];
                }
            }
        }
        let row_field = to_spectral(&row, a, dim);
        out_parts.push(divergence(&row_field)?);
    }
    Ok(SpectralField::from_components(&out_parts))
}

/// The five linear-flow coupling terms of the corrected system, in order:
///
/// * `R1 = uL . grad uL + uL . grad ub + ub . grad uL`
/// * `R2 = div(grad dL (x) grad dL) + div(grad dL (x) grad db + grad db (x) grad dL)`
/// * `R3 = uL . grad dL + uL . grad db + ub . grad dL`
/// * `R4 = (|grad dL|^2 + 2 grad dL . grad db) d_bar`
/// * `R5 = |grad dL|^2 (dL + db) + 2 (grad dL . grad db)(dL + db) + |grad db|^2 dL`
///
/// The mixed-gradient pairings are inner products, which is the reading
/// under which the corrected system plus these terms reproduces the full
/// nonlinearity identically (checked by the regrouping test).
pub fn remainder_terms(
    u_l: &SpectralField,
    delta_l: &SpectralField,
    u_bar: &SpectralField,
    delta_bar: &SpectralField,
    d_bar: [f64; 3],
) -> Result<[SpectralField; 5]> {
    let r1 = {
        let mut s = convection(u_l, u_l)?;
        s.add_assign_scaled(&convection(u_l, u_bar)?, 1.0);
        s.add_assign_scaled(&convection(u_bar, u_l)?, 1.0);
        s
    };
    let r2 = {
        let mut s = elastic_stress_div(delta_l)?;
        s.add_assign_scaled(&elastic_stress_cross(delta_l, delta_bar)?, 1.0);
        s
    };
    let r3 = {
        let mut s = convection(u_l, delta_l)?;
        s.add_assign_scaled(&convection(u_l, delta_bar)?, 1.0);
        s.add_assign_scaled(&convection(u_bar, delta_l)?, 1.0);
        s
    };
    let e_ll = grad_inner(delta_l, delta_l)?;
    let e_lb = grad_inner(delta_l, delta_bar)?;
    let e_bb = grad_inner(delta_bar, delta_bar)?;
    let r4 = {
        let mut s = e_ll.clone();
        s.add_assign_scaled(&e_lb, 2.0);
        scalar_times_const(&s, d_bar)
    };
    let r5 = {
        let mut mixed = e_ll.clone();
        mixed.add_assign_scaled(&e_lb, 2.0);
        let mut s = scalar_times_vector(&mixed, delta_l);
        s.add_assign_scaled(&scalar_times_vector(&mixed, delta_bar), 1.0);
        s.add_assign_scaled(&scalar_times_vector(&e_bb, delta_l), 1.0);
        s
    };
    Ok([r1, r2, r3, r4, r5])
}
