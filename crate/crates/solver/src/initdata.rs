//! Seeded, reproducible initial data with prescribed dyadic norms.

use gvlc_core::dyadic::DyadicDecomposition;
use gvlc_core::norms::{besov_norm, BesovIndex};
use gvlc_core::ops::leray_project;
use gvlc_core::transform::forward_transform;
use gvlc_core::{GridSpec, SpectralField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

/// Smooth random real scalar built from seeded white noise band-limited to
/// `1 <= |k|_inf <= band`, zero mean.
fn random_band_scalar(spec: GridSpec, band: i64, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
    let phys: Vec<f64> = (0..spec.points()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut f = forward_transform(&phys, spec).map_err(crate::error::SolverError::Core)?;
    let spec_copy = f.spec;
    for (off, k) in spec_copy.iter_k() {
        let keep = k[..spec_copy.dim].iter().any(|&ki| ki != 0)
            && k[..spec_copy.dim].iter().all(|&ki| ki.abs() <= band);
        if !keep {
            f.coeffs_mut()[off] = gvlc_core::Complex64::ZERO;
        }
    }
    Ok(f)
}

/// Random divergence-free velocity with prescribed `B^{3/p-1}_{p,1}` norm.
pub fn random_divfree_velocity(
    spec: GridSpec,
    seed: u64,
    target_norm: f64,
    band: i64,
    p: f64,
    dec: &DyadicDecomposition,
) -> Result<SpectralField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts: Vec<SpectralField> = (0..3)
        .map(|_| random_band_scalar(spec, band, &mut rng))
        .collect::<Result<_>>()?;
    let mut u = SpectralField::from_components(&parts);
    u = leray_project(&u).map_err(crate::error::SolverError::Core)?;
    u.zero_mean();
    u.zero_nyquist();
    let idx = BesovIndex::new(3.0 / p - 1.0, p, 1.0);
    let cur = besov_norm(&u, idx, dec);
    if cur > 0.0 {
        u.scale(target_norm / cur);
    }
    Ok(u)
}

/// Random director deviation along a fixed direction orthogonal to `d_bar`,
/// normalized in `B^{3/q}_{q,1}`.
pub fn random_director_deviation(
    spec: GridSpec,
    seed: u64,
    target_norm: f64,
    band: i64,
    q: f64,
    d_bar: [f64; 3],
    dec: &DyadicDecomposition,
) -> Result<SpectralField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    // seeded direction, projected off d_bar and normalized
    let raw = [
        rng.gen_range(-1.0..1.0f64),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    ];
    let dot: f64 = (0..3).map(|i| raw[i] * d_bar[i]).sum();
    let mut e = [0.0f64; 3];
    for i in 0..3 {
        e[i] = raw[i] - dot * d_bar[i];
    }
    let len = (e[0] * e[0] + e[1] * e[1] + e[2] * e[2]).sqrt();
    assert!(len > 1e-6, "degenerate transverse direction; change seed");
    for v in &mut e {
        *v /= len;
    }
    let g = random_band_scalar(spec, band, &mut rng)?;
    let parts: Vec<SpectralField> = (0..3).map(|c| g.scaled(e[c])).collect();
    let mut delta = SpectralField::from_components(&parts);
    delta.zero_mean();
    delta.zero_nyquist();
    let idx = BesovIndex::new(3.0 / q, q, 1.0);
    let cur = besov_norm(&delta, idx, dec);
    if cur > 0.0 {
        delta.scale(target_norm / cur);
    }
    Ok(delta)
}

/// Single-scale cellular velocity `A (sin x cos y cos z, -cos x sin y cos z, 0)`,
/// exactly divergence-free.
pub fn taylor_green(spec: GridSpec, amplitude: f64) -> Result<SpectralField> {
    let n = spec.n;
    let dx = spec.dx();
    let pts = spec.points();
    let mut ux = vec![0.0f64; pts];
    let mut uy = vec![0.0f64; pts];
    for off in 0..pts {
        let iz = off % n;
        let iy = (off / n) % n;
        let ix = off / (n * n);
        let (x, y, z) = (ix as f64 * dx, iy as f64 * dx, iz as f64 * dx);
        ux[off] = amplitude * x.sin() * y.cos() * z.cos();
        uy[off] = -amplitude * x.cos() * y.sin() * z.cos();
    }
    let fx = forward_transform(&ux, spec).map_err(crate::error::SolverError::Core)?;
    let fy = forward_transform(&uy, spec).map_err(crate::error::SolverError::Core)?;
    let fz = SpectralField::zeros(spec, 1);
    Ok(SpectralField::from_components(&[fx, fy, fz]))
}

/// Full-spectrum synthetic field with coefficients `~ e^{-|k|_1}` on the
/// dealiased band, divergence-free; used as a heat-flow control whose
/// spectral decay is known in closed form.
pub fn exponential_spectrum_velocity(
    spec: GridSpec,
    seed: u64,
    amplitude: f64,
) -> Result<SpectralField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phys: Vec<gvlc_core::Complex64> = (0..3 * spec.points())
        .map(|_| gvlc_core::Complex64::new(rng.gen_range(0.5..1.0), 0.0))
        .collect();
    let mut u = gvlc_core::transform::forward_transform_complex(&phys, spec, 3)
        .map_err(crate::error::SolverError::Core)?;
    u.set_real_symmetric(true);
    let kmax = spec.dealias_kmax();
    let pts = spec.points();
    let spec_copy = u.spec;
    for (off, k) in spec_copy.iter_k() {
        let out_of_band = k[..3].iter().any(|ki| ki.abs() > kmax) || k[..3].iter().all(|&ki| ki == 0);
        let l1: i64 = k[..3].iter().map(|ki| ki.abs()).sum();
        for c in 0..3 {
            let z = &mut u.coeffs_mut()[c * pts + off];
            if out_of_band {
                *z = gvlc_core::Complex64::ZERO;
            } else {
                // keep the white phase, impose the exponential profile
                let cur = z.norm();
                if cur > 0.0 {
                    *z *= (-(l1 as f64)).exp() / cur;
                }
            }
        }
    }
    let mut u = leray_project(&u).map_err(crate::error::SolverError::Core)?;
    u.zero_mean();
    u.scale(amplitude);
    Ok(u)
}
