use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::symbol::FrequencySymbol;

/// Multiply every coefficient by `m(xi_k)`, componentwise over the field.
///
/// Errors if the symbol evaluates to a non-finite value at an occupied
/// frequency (a zero coefficient tolerates a non-finite symbol value,
/// which keeps `0 * inf` pathologies out of the data).
pub fn apply_multiplier<S: FrequencySymbol>(f: &SpectralField, m: &S) -> Result<SpectralField> {
    let spec = f.spec;
    let x0 = spec.xi0();
    let mut out = f.clone();
    let mut hermitian_preserved = true;
    for (off, k) in spec.iter_k() {
        let xi: Vec<f64> = (0..spec.dim).map(|d| k[d] as f64 * x0).collect();
        let v = m.eval(&xi);
        if !(v.re.is_finite() && v.im.is_finite()) {
            let occupied = (0..f.components()).any(|c| f.comp(c)[off] != Complex64::ZERO);
            if occupied {
                return Err(CoreError::NonFiniteMultiplier { k: k[..spec.dim].to_vec() });
            }
            for c in 0..f.components() {
                out.comp_mut(c)[off] = Complex64::ZERO;
            }
            continue;
        }
        for c in 0..f.components() {
            let z = f.comp(c)[off] * v;
            out.comp_mut(c)[off] = z;
        }
        // A multiplier preserves realness iff m(-k) = conj(m(k)); detect the
        // common real-even case cheaply instead of tracking pairs.
        if v.im != 0.0 {
            hermitian_preserved = false;
        }
    }
    if !hermitian_preserved {
        out.set_real_symmetric(false);
    }
    Ok(out)
}

fn derivative_component(f: &SpectralField, c: usize, axis: usize) -> SpectralField {
    let spec = f.spec;
    let x0 = spec.xi0();
    let mut out = SpectralField::zeros(spec, 1);
    let src = f.comp(c);
    let dst = out.comp_mut(0);
    let nyq = -(spec.n as i64) / 2;
    for (off, k) in spec.iter_k() {
        if k[..spec.dim].contains(&nyq) {
            continue; // Nyquist zeroed, keeps d/dx skew-symmetric
        }
        let xi = k[axis] as f64 * x0;
        dst[off] = src[off] * Complex64::new(0.0, xi);
    }
    out.set_real_symmetric(f.is_real_symmetric());
    out
}

/// Gradient of a scalar field: `dim` components `(d_1 f, ..., d_dim f)`.
pub fn gradient(f: &SpectralField) -> Result<SpectralField> {
    if f.components() != 1 {
        return Err(CoreError::ComponentMismatch { got: f.components(), want: 1 });
    }
    let parts: Vec<SpectralField> =
        (0..f.spec.dim).map(|a| derivative_component(f, 0, a)).collect();
    Ok(SpectralField::from_components(&parts))
}

/// Partial derivative along one axis, componentwise.
pub fn partial(f: &SpectralField, axis: usize) -> SpectralField {
    let parts: Vec<SpectralField> =
        (0..f.components()).map(|c| derivative_component(f, c, axis)).collect();
    SpectralField::from_components(&parts)
}

/// Divergence of a `dim`-component field.
pub fn divergence(u: &SpectralField) -> Result<SpectralField> {
    let dim = u.spec.dim;
    if u.components() != dim {
        return Err(CoreError::ComponentMismatch { got: u.components(), want: dim });
    }
    let mut out = SpectralField::zeros(u.spec, 1);
    for a in 0..dim {
        let d = derivative_component(u, a, a);
        out.add_assign_scaled(&d, 1.0);
    }
    out.set_real_symmetric(u.is_real_symmetric());
    Ok(out)
}

/// Laplacian, componentwise, with the Nyquist mode zeroed.
pub fn laplacian(f: &SpectralField) -> SpectralField {
    let spec = f.spec;
    let x0 = spec.xi0();
    let mut out = f.clone();
    let nyq = -(spec.n as i64) / 2;
    let p = spec.points();
    for (off, k) in spec.iter_k() {
        if k[..spec.dim].contains(&nyq) {
            for c in 0..f.components() {
                out.coeffs_mut()[c * p + off] = Complex64::ZERO;
            }
            continue;
        }
        let s = -(0..spec.dim).map(|d| (k[d] as f64 * x0).powi(2)).sum::<f64>();
        for c in 0..f.components() {
            out.coeffs_mut()[c * p + off] = f.comp(c)[off] * s;
        }
    }
    out
}

/// Leray projection onto divergence-free fields:
/// `(Pu)_i(k) = u_i(k) - xi_i (xi . u(k)) / |xi|^2`, `k = 0` passed through.
pub fn leray_project(u: &SpectralField) -> Result<SpectralField> {
    let spec = u.spec;
    let dim = spec.dim;
    if u.components() != dim {
        return Err(CoreError::ComponentMismatch { got: u.components(), want: dim });
    }
    let x0 = spec.xi0();
    let mut out = u.clone();
    let p = spec.points();
    for (off, k) in spec.iter_k() {
        let mut norm2 = 0.0;
        for d in 0..dim {
            let xi = k[d] as f64 * x0;
            norm2 += xi * xi;
        }
        if norm2 == 0.0 {
            continue;
        }
        let mut dot = Complex64::ZERO;
        for c in 0..dim {
            dot += u.comp(c)[off] * (k[c] as f64 * x0);
        }
        let factor = dot / norm2;
        for c in 0..dim {
            let xi = k[c] as f64 * x0;
            out.coeffs_mut()[c * p + off] = u.comp(c)[off] - factor * xi;
        }
    }
    Ok(out)
}

/// Grid max of `|div u|` in physical space, a solver health check.
pub fn divergence_sup(u: &SpectralField) -> Result<f64> {
    let d = divergence(u)?;
    let phys = crate::transform::inverse_transform(&d);
    Ok(phys.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
