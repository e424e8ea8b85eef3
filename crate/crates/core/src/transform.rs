use num_complex::Complex64;
use rustfft::FftPlanner;
use std::cell::RefCell;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::grid::GridSpec;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn rustfft::Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(n)
        } else {
            p.plan_fft_inverse(n)
        }
    })
}

/// In-place multi-dimensional FFT over one component (row-major, n per axis).
fn fft_nd(data: &mut [Complex64], spec: GridSpec, forward: bool) {
    let n = spec.n;
    let fft = plan(n, forward);
    let mut scratch = vec![Complex64::ZERO; n];
    let total = spec.points();
    for axis in 0..spec.dim {
        // stride between consecutive elements along `axis`
        let stride = n.pow((spec.dim - 1 - axis) as u32);
        let lines = total / n;
        for line in 0..lines {
            // base offset of this line: split line index into (outer, inner)
            let outer = line / stride;
            let inner = line % stride;
            let base = outer * stride * n + inner;
            if stride == 1 {
                fft.process(&mut data[base..base + n]);
            } else {
                for (i, s) in scratch.iter_mut().enumerate() {
                    *s = data[base + i * stride];
                }
                fft.process(&mut scratch);
                for (i, s) in scratch.iter().enumerate() {
                    data[base + i * stride] = *s;
                }
            }
        }
    }
}

/// Transform a real-valued physical array (row-major over the grid) into
/// spectral coefficients. Amplitude convention: the forward transform carries
/// the `1/n^dim` factor, so `cos(x_1)` yields `1/2` at `k = (+-1, 0, 0)`.
pub fn forward_transform(real_field: &[f64], spec: GridSpec) -> Result<SpectralField> {
    let want = spec.points();
    if real_field.len() != want {
        return Err(CoreError::ShapeMismatch { got: real_field.len(), want });
    }
    let data: Vec<Complex64> = real_field.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut f = forward_transform_complex(&data, spec, 1)?;
    f.set_real_symmetric(true);
    Ok(f)
}

/// Forward transform of complex physical values, component-major.
pub fn forward_transform_complex(
    phys: &[Complex64],
    spec: GridSpec,
    components: usize,
) -> Result<SpectralField> {
    let want = components * spec.points();
    if phys.len() != want {
        return Err(CoreError::ShapeMismatch { got: phys.len(), want });
    }
    let mut data = phys.to_vec();
    let p = spec.points();
    let scale = 1.0 / p as f64;
    for c in 0..components {
        fft_nd(&mut data[c * p..(c + 1) * p], spec, true);
    }
    for z in &mut data {
        *z *= scale;
    }
    let mut f = SpectralField::from_coeffs(spec, components, data, false)?;
    f.set_real_symmetric(false);
    Ok(f)
}

/// Inverse transform to complex physical values, component-major flat array.
pub fn inverse_transform(field: &SpectralField) -> Vec<Complex64> {
    let spec = field.spec;
    let p = spec.points();
    let mut data = field.coeffs().to_vec();
    for c in 0..field.components() {
        fft_nd(&mut data[c * p..(c + 1) * p], spec, false);
    }
    data
}

/// Inverse transform of a field flagged real, discarding the imaginary parts.
pub fn inverse_transform_real(field: &SpectralField) -> Vec<f64> {
    inverse_transform(field).iter().map(|z| z.re).collect()
}

/// Pointwise physical-space product of two scalar-per-component fields of the
/// same shape, transformed back to coefficients and dealiased.
pub fn product(f: &SpectralField, g: &SpectralField) -> SpectralField {
    product_raw(f, g).dealias()
}

/// Physical product without the dealias pass (callers that sum several
/// products may dealias once at the end).
pub fn product_raw(f: &SpectralField, g: &SpectralField) -> SpectralField {
    assert_eq!(f.spec, g.spec);
    assert_eq!(f.components(), g.components());
    let a = inverse_transform(f);
    let b = inverse_transform(g);
    let prod: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
    let mut out = forward_transform_complex(&prod, f.spec, f.components()).expect("shape");
    out.set_real_symmetric(f.is_real_symmetric() && g.is_real_symmetric());
    out
}
