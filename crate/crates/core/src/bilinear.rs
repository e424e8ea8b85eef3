use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::halfline::{damp_opposite, octant_project, SignOctant};
use crate::transform::{forward_transform_complex, inverse_transform};

/// Brute-force conjugated product: the exact double frequency sum
/// `sum_eta e^{sqrt t (|xi|_1 - |xi-eta|_1 - |eta|_1)} u(xi-eta) v(eta)`,
/// reported on the dealiased band. The quadratic cost restricts it to
/// small 1D/2D grids; it is the oracle the decomposition is checked against.
pub fn bilinear_direct(u: &SpectralField, v: &SpectralField, t: f64) -> Result<SpectralField> {
    let spec = u.spec;
    if spec.dim > 2 || spec.n > 64 {
        return Err(CoreError::BilinearSizeGuard { dim: spec.dim, n: spec.n });
    }
    if u.components() != 1 || v.components() != 1 {
        return Err(CoreError::ComponentMismatch { got: u.components().max(v.components()), want: 1 });
    }
    assert_eq!(u.spec, v.spec);
    let gamma = t.sqrt();
    let x0 = spec.xi0();
    let half = (spec.n / 2) as i64;
    let mut out = SpectralField::zeros(spec, 1);
    out.set_real_symmetric(false);

    let l1 = |k: &[i64]| -> f64 { k.iter().map(|ki| ki.unsigned_abs() as f64).sum::<f64>() * x0 };

    // iterate output frequency xi and inner frequency eta over the lattice
    let mut xi = vec![0i64; spec.dim];
    let mut eta = vec![0i64; spec.dim];
    let mut diff = vec![0i64; spec.dim];
    let total = spec.points();
    for (out_off, kxi) in spec.iter_k() {
        xi[..spec.dim].copy_from_slice(&kxi[..spec.dim]);
        let mut acc = Complex64::ZERO;
        for eta_off in 0..total {
            let keta = spec.k_vec_of_offset(eta_off);
            eta[..spec.dim].copy_from_slice(&keta);
            let mut in_lattice = true;
            for d in 0..spec.dim {
                diff[d] = xi[d] - eta[d];
                if diff[d] < -half || diff[d] >= half {
                    in_lattice = false;
                    break;
                }
            }
            if !in_lattice {
                continue;
            }
            let uc = u.at(0, &diff);
            if uc == Complex64::ZERO {
                continue;
            }
            let vc = v.at(0, &eta);
            if vc == Complex64::ZERO {
                continue;
            }
            let w = (gamma * (l1(&xi) - l1(&diff) - l1(&eta))).exp();
            acc += uc * vc * w;
        }
        out.coeffs_mut()[out_off] = acc;
    }
    out.dealias_in_place();
    Ok(out)
}

/// Conjugated product through the sign-octant identity: for every output
/// octant, damp each input's opposite-sign frequencies axiswise (the sum of
/// all half-line projection terms for that output octant collapses to this
/// single multiplier), multiply in physical space, and project the product
/// onto the output octant. The result is dealiased.
pub fn bilinear_decomposed(u: &SpectralField, v: &SpectralField, t: f64) -> Result<SpectralField> {
    if u.components() != 1 || v.components() != 1 {
        return Err(CoreError::ComponentMismatch { got: u.components().max(v.components()), want: 1 });
    }
    assert_eq!(u.spec, v.spec);
    let spec = u.spec;
    let octants = SignOctant::all(spec.dim);
    let mut out = SpectralField::zeros(spec, 1);

    for out_oct in &octants {
        let pu = inverse_transform(&damp_opposite(u, out_oct, t));
        let pv = inverse_transform(&damp_opposite(v, out_oct, t));
        let prod: Vec<Complex64> = pu.iter().zip(&pv).map(|(a, b)| a * b).collect();
        let term = octant_project(&forward_transform_complex(&prod, spec, 1)?, out_oct);
        for (o, z) in out.coeffs_mut().iter_mut().zip(term.coeffs()) {
            *o += z;
        }
    }
    out.set_real_symmetric(false);
    out.dealias_in_place();
    Ok(out)
}
