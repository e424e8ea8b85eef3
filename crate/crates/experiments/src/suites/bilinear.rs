//! Bilinear suite: the sign-octant decomposition against the brute-force
//! double sum, the conjugation identity, symbol membership of the
//! cell-restricted weight, and the operator-norm monitor.

use gvlc_core::bilinear::{bilinear_decomposed, bilinear_direct};
use gvlc_core::gevrey::{gevrey_multiply, GevreyWeight};
use gvlc_core::halfline::{cell_factor, cell_factor_value};
use gvlc_core::norms::lp_norm;
use gvlc_core::transform::product;
use gvlc_core::{Complex64, GridSpec, SpectralField};

use crate::error::Result;
use crate::report::{ExperimentReport, SeriesWriter};

fn band_limited_complex(spec: GridSpec, seed: u64) -> SpectralField {
    // deterministic congruential fill over the dealiased band
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    };
    let kmax = spec.dealias_kmax();
    let mut f = SpectralField::zeros(spec, 1);
    for (off, k) in spec.iter_k() {
        if k[..spec.dim].iter().any(|ki| ki.abs() > kmax) {
            continue;
        }
        f.coeffs_mut()[off] = Complex64::new(next(), next());
    }
    f.set_real_symmetric(false);
    f
}

pub fn run_bilinear_suite(seed: u64) -> Result<(ExperimentReport, SeriesWriter)> {
    let mut report = ExperimentReport::new("bilinear", seed);
    let mut series = SeriesWriter::default();

    // 1D decomposition identity across sizes and times
    for n in [16usize, 32, 64] {
        let spec = GridSpec::torus(1, n)?;
        let u = band_limited_complex(spec, seed ^ n as u64);
        let v = band_limited_complex(spec, seed ^ (n as u64) << 8);
        for t in [0.0, 0.1, 1.0] {
            let direct = bilinear_direct(&u, &v, t)?;
            let dec = bilinear_decomposed(&u, &v, t)?;
            let rel = direct.sub(&dec).max_coeff_abs() / direct.max_coeff_abs();
            series.push(t, &format!("bilinear_rel_err_n{n}"), rel);
            let tol = if t == 0.0 { 1e-12 } else { 1e-8 };
            report.push_le(
                &format!("bilinear-identity-n{n}-t{t}"),
                "decomposition vs brute-force double sum",
                rel,
                tol,
            );
        }
    }

    // conjugation identity at a 1D instance
    {
        let spec = GridSpec::torus(1, 32)?;
        let u = band_limited_complex(spec, seed ^ 0xabc);
        let v = band_limited_complex(spec, seed ^ 0xdef);
        let t = 0.25;
        let w = GevreyWeight::new(t);
        let conj = gevrey_multiply(
            &product(
                &gevrey_multiply(&u, &w, -1.0)?,
                &gevrey_multiply(&v, &w, -1.0)?,
            ),
            &w,
            1.0,
        )?;
        let direct = bilinear_direct(&u, &v, t)?;
        let rel = conj.sub(&direct).max_coeff_abs() / direct.max_coeff_abs();
        report.push_le(
            "bilinear-conjugation",
            "weight conjugation of the plain product",
            rel,
            1e-10,
        );
    }

    // octant symbol membership on sampled 3D pairs: the weight restricted to
    // a sign cell is the product over axes of the classified damping factors
    {
        let mut state = seed.wrapping_mul(0x2545_f491_4f6c_dd1d) | 1;
        let mut next_i = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ((state >> 33) as i64 % 21) - 10
        };
        let t = 0.7;
        let mut worst = 0.0f64;
        let mut checked = 0usize;
        while checked < 10_000 {
            let xi = [next_i(), next_i(), next_i()];
            let eta = [next_i(), next_i(), next_i()];
            let mut full = 0.0;
            let mut prod = 1.0;
            let mut ok = true;
            for d in 0..3 {
                let (x, e) = (xi[d] as f64, eta[d] as f64);
                full += x.abs() - (x - e).abs() - e.abs();
                let a = if x - e >= 0.0 { 1i8 } else { -1 };
                let b = if e >= 0.0 { 1i8 } else { -1 };
                let c = if x >= 0.0 { 1i8 } else { -1 };
                match cell_factor(a, b, c) {
                    Some(fac) => prod *= cell_factor_value(fac, t, x, e),
                    None => {
                        // empty cells only exist at the axis origin
                        ok = x == 0.0 && e == 0.0;
                        prod *= 1.0;
                    }
                }
            }
            assert!(ok, "nonempty cell left unclassified");
            let weight = (t.sqrt() * full).exp();
            worst = worst.max((weight - prod).abs());
            checked += 1;
        }
        report.push_le(
            "bilinear-octant-membership",
            "cell-restricted weight equals the damping-family product (10^4 pairs)",
            worst,
            1e-12,
        );
    }

    // operator-norm monitor across t (logged, bounded)
    {
        let spec = GridSpec::torus(1, 32)?;
        let u = band_limited_complex(spec, seed ^ 0x1111);
        let v = band_limited_complex(spec, seed ^ 0x2222);
        let p = 2.0;
        let den = lp_norm(&u, 2.0 * p) * lp_norm(&v, 2.0 * p);
        let mut worst = 0.0f64;
        for t in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let b = bilinear_decomposed(&u, &v, t)?;
            let ratio = lp_norm(&b, p) / den;
            series.push(t, "bilinear_operator_ratio", ratio);
            worst = worst.max(ratio);
        }
        report.push_le(
            "bilinear-operator-norm",
            "conjugated product operator ratio across t in [0, 4]",
            worst,
            50.0,
        );
    }

    Ok((report, series))
}
