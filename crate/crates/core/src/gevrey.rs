use num_complex::Complex64;

use crate::dyadic::DyadicDecomposition;
use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::norms::BesovIndex;

/// How exponential frequency weights are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Plain coefficient scaling; errors when the exponent leaves f64 range.
    Linear,
    /// Per-block max-exponent shifting; only norm evaluation is available.
    LogDomain,
}

/// The weight `e^{sqrt(t) |xi|_1}` with overflow policy.
#[derive(Debug, Clone, Copy)]
pub struct GevreyWeight {
    pub t: f64,
    /// Max exponent accepted in linear mode (default 700, near the f64 limit).
    pub cap: f64,
    pub mode: WeightMode,
}

impl GevreyWeight {
    pub fn new(t: f64) -> Self {
        assert!(t >= 0.0);
        Self { t, cap: 700.0, mode: WeightMode::Linear }
    }

    pub fn log_domain(t: f64) -> Self {
        Self { mode: WeightMode::LogDomain, ..Self::new(t) }
    }

    pub fn gamma(&self) -> f64 {
        self.t.sqrt()
    }
}

fn max_exponent(f: &SpectralField, gamma: f64) -> f64 {
    let spec = f.spec;
    let kmax = (spec.n / 2) as f64; // worst case per axis
    gamma * spec.xi0() * kmax * spec.dim as f64
}

/// Scale coefficients by `e^{sign * sqrt(t) |xi|_1}`.
///
/// Linear mode errors when the largest exponent exceeds the cap; norm
/// computations under larger weights go through [`gevrey_besov_norm`].
pub fn gevrey_multiply(f: &SpectralField, w: &GevreyWeight, sign: f64) -> Result<SpectralField> {
    assert!(sign == 1.0 || sign == -1.0);
    let gamma = w.gamma();
    if sign > 0.0 {
        let worst = max_exponent(f, gamma);
        if worst > w.cap {
            return Err(CoreError::GevreyOverflow { exponent: worst, cap: w.cap });
        }
    }
    let spec = f.spec;
    let p = spec.points();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let e = (sign * gamma * spec.xi_norm1(&k[..spec.dim])).exp();
        for c in 0..f.components() {
            out.coeffs_mut()[c * p + off] = f.comp(c)[off] * e;
        }
    }
    Ok(out)
}

/// Heat semigroup `e^{t Lap}`: multiplier `e^{-t |xi|^2}`.
pub fn heat_semigroup(f: &SpectralField, t: f64) -> SpectralField {
    assert!(t >= 0.0);
    let spec = f.spec;
    let p = spec.points();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let xi2 = {
            let v = spec.xi_norm2(&k[..spec.dim]);
            v * v
        };
        let e = (-t * xi2).exp();
        for c in 0..f.components() {
            out.coeffs_mut()[c * p + off] = f.comp(c)[off] * e;
        }
    }
    out
}

/// Combined smoothing `e^{t Lap + sqrt(t) Lam_1}`: multiplier
/// `e^{-t |xi|^2 + sqrt(t) |xi|_1}`, bounded by `e^{dim/4}` over all `xi`.
pub fn heat_gevrey(f: &SpectralField, t: f64) -> SpectralField {
    assert!(t >= 0.0);
    let spec = f.spec;
    let p = spec.points();
    let gamma = t.sqrt();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let xi2 = {
            let v = spec.xi_norm2(&k[..spec.dim]);
            v * v
        };
        let e = (-t * xi2 + gamma * spec.xi_norm1(&k[..spec.dim])).exp();
        for c in 0..f.components() {
            out.coeffs_mut()[c * p + off] = f.comp(c)[off] * e;
        }
    }
    out
}

/// A norm carried as `ln(value)` so weighted norms survive exponent ranges
/// that overflow f64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln: f64,
}

impl LogValue {
    pub fn zero() -> Self {
        Self { ln: f64::NEG_INFINITY }
    }

    pub fn from_value(v: f64) -> Self {
        Self { ln: v.ln() }
    }

    pub fn value(&self) -> f64 {
        self.ln.exp()
    }
}

/// Besov norm of `e^{sqrt(t) Lam_1} f` computed block-by-block with
/// max-exponent shifting, usable in either weight mode. Returns the norm in
/// log form together with the mode actually exercised.
pub fn gevrey_besov_norm(
    f: &SpectralField,
    t: f64,
    idx: BesovIndex,
    dec: &DyadicDecomposition,
) -> (LogValue, WeightMode) {
    let gamma = t.sqrt();
    let spec = f.spec;
    let p = spec.points();
    let linear_ok = max_exponent(f, gamma) <= 700.0;

    // ln of 2^{js} ||Delta_j e^{gamma Lam1} f||_p per block
    let mut ln_blocks = Vec::new();
    for j in dec.blocks() {
        // shift = max exponent over frequencies occupied by this block
        let scale = 2f64.powi(-j);
        let mut shift = f64::NEG_INFINITY;
        for (off, k) in spec.iter_k() {
            let r = spec.xi_norm2(&k[..spec.dim]);
            if dec.phi_at(r * scale) == 0.0 {
                continue;
            }
            let occupied = (0..f.components()).any(|c| f.comp(c)[off] != Complex64::ZERO);
            if occupied {
                shift = shift.max(gamma * spec.xi_norm1(&k[..spec.dim]));
            }
        }
        if shift == f64::NEG_INFINITY {
            ln_blocks.push(f64::NEG_INFINITY);
            continue;
        }
        // weighted block with the shift taken out stays in range
        let mut block = SpectralField::zeros(spec, f.components());
        for (off, k) in spec.iter_k() {
            let r = spec.xi_norm2(&k[..spec.dim]);
            let w = dec.phi_at(r * scale);
            if w == 0.0 {
                continue;
            }
            let occupied = (0..f.components()).any(|c| f.comp(c)[off] != Complex64::ZERO);
            if !occupied {
                continue;
            }
            let e = (gamma * spec.xi_norm1(&k[..spec.dim]) - shift).exp();
            for c in 0..f.components() {
                block.coeffs_mut()[c * p + off] = f.comp(c)[off] * (w * e);
            }
        }
        let nrm = crate::norms::lp_norm(&block, idx.p);
        ln_blocks.push(idx.s * j as f64 * 2f64.ln() + shift + nrm.ln());
    }

    // l^r sum in log domain
    let ln = if idx.r.is_infinite() {
        ln_blocks.into_iter().fold(f64::NEG_INFINITY, f64::max)
    } else {
        let m = ln_blocks.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if m == f64::NEG_INFINITY {
            m
        } else {
            let s: f64 = ln_blocks.iter().map(|l| (idx.r * (l - m)).exp()).sum();
            m + s.ln() / idx.r
        }
    };
    (
        LogValue { ln },
        if linear_ok { WeightMode::Linear } else { WeightMode::LogDomain },
    )
}

/// Result of fitting `log max_shell |f_hat|` against the shell center.
#[derive(Debug, Clone, Copy)]
pub struct SlopeFit {
    /// Fitted slope; the measured decay radius is `-slope`.
    pub slope: f64,
    pub intercept: f64,
    /// RMS residual of the least-squares fit.
    pub residual: f64,
    pub shells_used: usize,
}

/// Per-shell peak amplitudes over `|k|_1 = m`, within the dealiased band.
pub fn shell_amplitudes(f: &SpectralField) -> Vec<(f64, f64)> {
    let spec = f.spec;
    let kmax = spec.dealias_kmax();
    let max_shell = (kmax * spec.dim as i64) as usize;
    let mut amps = vec![0.0f64; max_shell + 1];
    for (off, k) in spec.iter_k() {
        if k[..spec.dim].iter().any(|ki| ki.abs() > kmax) {
            continue;
        }
        let m: i64 = k[..spec.dim].iter().map(|ki| ki.abs()).sum();
        if m == 0 {
            continue;
        }
        for c in 0..f.components() {
            let a = f.comp(c)[off].norm();
            if a > amps[m as usize] {
                amps[m as usize] = a;
            }
        }
    }
    let x0 = spec.xi0();
    (1..=max_shell)
        .filter(|&m| amps[m] > 0.0)
        .map(|m| (m as f64 * x0, amps[m]))
        .collect()
}

/// Least-squares fit of the spectral decay rate over `|xi|_1` shells.
///
/// The fit is taken over the populated shells above a floor of `1e-13`
/// relative to the peak shell, restricted to the upper `window` fraction of
/// the usable shell range (the low shells carry the data band, not the tail).
pub fn spectral_slope(f: &SpectralField, window: f64) -> Result<SlopeFit> {
    let amps = shell_amplitudes(f);
    let peak = amps.iter().map(|&(_, a)| a).fold(0.0, f64::max);
    let usable: Vec<(f64, f64)> = amps
        .into_iter()
        .filter(|&(_, a)| a > 1e-13 * peak)
        .map(|(m, a)| (m, a.ln()))
        .collect();
    if usable.len() < 5 {
        return Err(CoreError::DegenerateFit { need: 5, got: usable.len() });
    }
    let hi = usable.last().unwrap().0;
    let lo = usable.first().unwrap().0;
    let cut = hi - window.clamp(0.0, 1.0) * (hi - lo);
    let pts: Vec<(f64, f64)> = usable.iter().cloned().filter(|&(m, _)| m >= cut).collect();
    let pts = if pts.len() >= 5 { pts } else { usable };

    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-12 {
        return Err(CoreError::DegenerateFit { need: 5, got: pts.len() });
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    let residual = (pts
        .iter()
        .map(|&(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(SlopeFit { slope, intercept, residual, shells_used: pts.len() })
}
