use crate::field::SpectralField;

/// A sign vector in `{-1, +1}^dim` labelling a frequency octant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignOctant {
    pub lambda: [i8; 3],
    pub dim: usize,
}

impl SignOctant {
    pub fn all(dim: usize) -> Vec<SignOctant> {
        let count = 1usize << dim;
        (0..count)
            .map(|bits| {
                let mut lambda = [1i8; 3];
                for d in 0..dim {
                    if bits >> d & 1 == 1 {
                        lambda[d] = -1;
                    }
                }
                SignOctant { lambda, dim }
            })
            .collect()
    }

    pub fn sign(&self, axis: usize) -> i8 {
        self.lambda[axis]
    }
}

/// Weight a coefficient gets from the half-line projection along one axis:
/// 1 on the open half-line, 1/2 at zero, 0 otherwise. Splitting zero evenly
/// keeps `K_{+1} + K_{-1} = id` exact on the lattice.
#[inline]
pub fn halfline_weight(k: i64, sign: i8) -> f64 {
    if k == 0 {
        0.5
    } else if (k > 0) == (sign > 0) {
        1.0
    } else {
        0.0
    }
}

/// One-axis half-line projection `K_sign` along `axis`.
pub fn half_line_project(f: &SpectralField, axis: usize, sign: i8) -> SpectralField {
    assert!(sign == 1 || sign == -1);
    assert!(axis < f.spec.dim);
    let spec = f.spec;
    let p = spec.points();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let w = halfline_weight(k[axis], sign);
        if w != 1.0 {
            for c in 0..f.components() {
                out.coeffs_mut()[c * p + off] = f.comp(c)[off] * w;
            }
        }
    }
    out.set_real_symmetric(false);
    out
}

/// Tensor half-line projection over all axes with the octant's signs.
pub fn octant_project(f: &SpectralField, oct: &SignOctant) -> SpectralField {
    let spec = f.spec;
    let p = spec.points();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let mut w = 1.0;
        for d in 0..spec.dim {
            w *= halfline_weight(k[d], oct.sign(d));
        }
        if w != 1.0 {
            for c in 0..f.components() {
                out.coeffs_mut()[c * p + off] = f.comp(c)[off] * w;
            }
        }
    }
    out.set_real_symmetric(false);
    out
}

/// One-axis damping: identity when `k1 k2 = 1`, else the multiplier
/// `e^{-2 sqrt(t) |xi_axis|}`.
pub fn damping_multiplier(f: &SpectralField, axis: usize, t: f64, k1: i8, k2: i8) -> SpectralField {
    assert!(k1 == 1 || k1 == -1);
    assert!(k2 == 1 || k2 == -1);
    if k1 * k2 == 1 {
        return f.clone();
    }
    let spec = f.spec;
    let p = spec.points();
    let x0 = spec.xi0();
    let g2 = 2.0 * t.sqrt();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let e = (-g2 * (k[axis].unsigned_abs() as f64) * x0).exp();
        for c in 0..f.components() {
            out.coeffs_mut()[c * p + off] = f.comp(c)[off] * e;
        }
    }
    out
}

/// Input operator of the product decomposition, already summed over the
/// input's own octants: damp the frequencies lying opposite to the output
/// octant with `e^{-2 sqrt t |xi_d|}` per axis, leave aligned (and zero)
/// frequencies alone.
pub fn damp_opposite(f: &SpectralField, out_oct: &SignOctant, t: f64) -> SpectralField {
    let spec = f.spec;
    let p = spec.points();
    let x0 = spec.xi0();
    let g2 = 2.0 * t.sqrt();
    let mut out = f.clone();
    for (off, k) in spec.iter_k() {
        let mut w = 1.0;
        for d in 0..spec.dim {
            let s = k[d].signum() as i8;
            if s != 0 && s != out_oct.sign(d) {
                w *= (-g2 * (k[d].unsigned_abs() as f64) * x0).exp();
            }
        }
        if w != 1.0 {
            for c in 0..f.components() {
                out.coeffs_mut()[c * p + off] = f.comp(c)[off] * w;
            }
        }
    }
    out
}

/// The per-axis factor the conjugated-product weight takes on a sign cell:
/// identity, damping in the second argument's variable, or damping in the
/// first argument's variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellFactor {
    One,
    DampSecond,
    DampFirst,
}

/// Per-axis classification of the weight `e^{sqrt t (|xi| - |xi - eta| - |eta|)}`
/// on the sign cell `(a, b, c) = (sign(xi - eta), sign(eta), sign(xi))`:
/// the cell-restricted factor is `1`, `e^{-2 sqrt t |eta|}` or
/// `e^{-2 sqrt t |xi - eta|}`. Returns `None` for the empty cells
/// (`a = b = -c` away from zero).
pub fn cell_factor(a: i8, b: i8, c: i8) -> Option<CellFactor> {
    if a == b && b == c {
        Some(CellFactor::One)
    } else if a == c {
        Some(CellFactor::DampSecond)
    } else if b == c {
        Some(CellFactor::DampFirst)
    } else {
        None
    }
}

/// Evaluate the claimed cell factor at concrete 1D frequencies.
pub fn cell_factor_value(fac: CellFactor, t: f64, xi: f64, eta: f64) -> f64 {
    let g2 = 2.0 * t.sqrt();
    match fac {
        CellFactor::One => 1.0,
        CellFactor::DampSecond => (-g2 * eta.abs()).exp(),
        CellFactor::DampFirst => (-g2 * (xi - eta).abs()).exp(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn random(spec: GridSpec, seed: u64) -> SpectralField {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let phys: Vec<f64> = (0..spec.points()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut f = crate::transform::forward_transform(&phys, spec).unwrap();
        f.dealias_in_place();
        f
    }

    #[test]
    fn cosine_splits_into_single_modes() {
        let spec = GridSpec::torus(1, 16).unwrap();
        let mut f = SpectralField::zeros(spec, 1);
        f.set(0, &[1], Complex64::new(0.5, 0.0));
        f.set(0, &[-1], Complex64::new(0.5, 0.0));
        let plus = half_line_project(&f, 0, 1);
        assert_eq!(plus.at(0, &[1]), Complex64::new(0.5, 0.0));
        assert_eq!(plus.at(0, &[-1]), Complex64::ZERO);
    }

    #[test]
    fn partition_and_idempotence() {
        let spec = GridSpec::torus(3, 16).unwrap();
        let f = random(spec, 1);
        let plus = half_line_project(&f, 1, 1);
        let minus = half_line_project(&f, 1, -1);
        let sum = plus.add(&minus);
        assert!(sum.sub(&f).max_coeff_abs() <= 1e-13 * f.max_coeff_abs());
        // idempotence holds away from the split plane (the half weight at
        // k_axis = 0 is what makes the partition exact)
        let mut g = f.clone();
        let spec = g.spec;
        for (off, k) in spec.iter_k() {
            if k[1] == 0 {
                for c in 0..g.components() {
                    let p = spec.points();
                    g.coeffs_mut()[c * p + off] = Complex64::ZERO;
                }
            }
        }
        let gp = half_line_project(&g, 1, 1);
        let gpp = half_line_project(&gp, 1, 1);
        assert!(gpp.sub(&gp).max_coeff_abs() <= 1e-13 * f.max_coeff_abs());
    }

    #[test]
    fn damping_identity_and_value() {
        let spec = GridSpec::torus(1, 16).unwrap();
        let mut f = SpectralField::zeros(spec, 1);
        f.set(0, &[3], Complex64::new(1.0, 0.0));
        let id = damping_multiplier(&f, 0, 1.0, 1, 1);
        assert_eq!(id.sub(&f).max_coeff_abs(), 0.0);
        let damped = damping_multiplier(&f, 0, 1.0, 1, -1);
        let want = (-6.0f64).exp(); // ~2.479e-3
        assert!((damped.at(0, &[3]).re - want).abs() < 1e-15);
    }

    #[test]
    fn octant_cell_factors_cover_the_weight_1d() {
        // per sign cell, the weight e^{sqrt t (|xi|-|xi-eta|-|eta|)} equals the
        // classified member of the damping family
        let t = 0.7f64;
        let mut checked = 0usize;
        for xi in -6i64..=6 {
            for eta in -6i64..=6 {
                let (x, e) = (xi as f64, eta as f64);
                let w = (t.sqrt() * (x.abs() - (x - e).abs() - e.abs())).exp();
                // all sign cells containing this point must agree
                for a in [-1i8, 1] {
                    for b in [-1i8, 1] {
                        for c in [-1i8, 1] {
                            let in_cell = (x - e) * a as f64 >= 0.0
                                && e * b as f64 >= 0.0
                                && x * c as f64 >= 0.0;
                            if !in_cell {
                                continue;
                            }
                            if let Some(fac) = cell_factor(a, b, c) {
                                let v = cell_factor_value(fac, t, x, e);
                                assert!(
                                    (v - w).abs() <= 1e-12,
                                    "cell ({a},{b},{c}) xi={xi} eta={eta}: {v} vs {w}"
                                );
                                checked += 1;
                            } else {
                                // empty cells only touch the origin
                                assert!(xi == 0 && eta == 0);
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }
}
