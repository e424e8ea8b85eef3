use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::grid::GridSpec;
use crate::transform::{forward_transform_complex, inverse_transform};

/// C-infinity glue `s(x)`: 0 for `x <= 0`, 1 for `x >= 1`, strictly
/// increasing in between, built from `exp(-1/x)`.
pub fn smooth_step_pub(x: f64) -> f64 {
    smooth_step(x)
}

fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

/// Unnormalized radial bump: ramps up on [3/4, 1], plateau on [1, 2],
/// ramps down on [2, 8/3].
fn phi_raw(r: f64) -> f64 {
    if r <= 0.75 || r >= 8.0 / 3.0 {
        0.0
    } else if r < 1.0 {
        smooth_step((r - 0.75) / 0.25)
    } else if r <= 2.0 {
        1.0
    } else {
        1.0 - smooth_step((r - 2.0) / (8.0 / 3.0 - 2.0))
    }
}

/// Normalizer `D(r) = sum_j phi_raw(2^-j r)`, dyadic-scale invariant by
/// construction (powers of two are exact in floating point, and the sum is
/// taken in a fixed ascending-j order).
fn normalizer(r: f64) -> f64 {
    debug_assert!(r > 0.0);
    // supp phi_raw(2^-j r) requires 3/4 < 2^-j r < 8/3
    let j_lo = (r * 3.0 / 8.0).log2().floor() as i32;
    let j_hi = (r * 4.0 / 3.0).log2().ceil() as i32;
    let mut sum = 0.0;
    for j in (j_lo - 1)..=(j_hi + 1) {
        sum += phi_raw(r * 2f64.powi(-j));
    }
    sum
}

/// The cutoff pair and valid block range of a grid.
///
/// `phi_at(r)` is the normalized annulus bump (`supp` in `[3/4, 8/3]`,
/// exact partition of unity over dyadic dilates), `chi_at(r)` the matching
/// low-pass plateau (`supp` in `[0, 4/3]`).
#[derive(Debug, Clone, Copy)]
pub struct DyadicDecomposition {
    pub spec: GridSpec,
    pub j_min: i32,
    pub j_max: i32,
}

impl DyadicDecomposition {
    /// Build cutoffs for a grid; the block range covers the grid's dealiased
    /// band. Errors when fewer than 3 blocks fit.
    pub fn build_cutoffs(spec: GridSpec) -> Result<Self> {
        let xi_min = spec.xi0();
        let xi_max = spec.xi0() * (spec.dim as f64).sqrt() * spec.dealias_kmax() as f64;
        // block j is empty below the first nonzero frequency when 8/3*2^j <= xi_min
        let j_min = ((xi_min * 3.0 / 8.0).log2() + 1e-12).floor() as i32 + 1;
        // block j is empty above the band when 3/4*2^j >= xi_max
        let j_max = ((xi_max * 4.0 / 3.0).log2() - 1e-12).ceil() as i32 - 1;
        let blocks = (j_max - j_min + 1).max(0) as usize;
        if blocks < 3 {
            return Err(CoreError::GridTooSmall { blocks });
        }
        Ok(Self { spec, j_min, j_max })
    }

    /// Normalized annulus symbol value at radius `r = |xi|`.
    pub fn phi_at(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let raw = phi_raw(r);
        if raw == 0.0 {
            0.0
        } else {
            raw / normalizer(r)
        }
    }

    /// Low-pass symbol `chi(xi) = 1 - sum_{j >= 0} phi(2^-j xi)`.
    pub fn chi_at(&self, r: f64) -> f64 {
        self.chi_scaled_at(0, r)
    }

    /// Symbol of `S_j`: 1 minus all annulus bumps at scales `>= j`.
    fn chi_scaled_at(&self, j: i32, r: f64) -> f64 {
        if r <= 0.0 {
            return 1.0;
        }
        let j_hi = (r * 4.0 / 3.0).log2().ceil() as i32 + 1;
        let mut acc = 0.0;
        for jp in j..=j_hi.max(j) {
            acc += self.phi_at(r * 2f64.powi(-jp));
        }
        1.0 - acc
    }

    pub fn blocks(&self) -> impl Iterator<Item = i32> {
        self.j_min..=self.j_max
    }

    fn check_range(&self, j: i32) -> Result<()> {
        if j < self.j_min || j > self.j_max {
            return Err(CoreError::BlockOutOfRange { j, j_min: self.j_min, j_max: self.j_max });
        }
        Ok(())
    }

    /// Annulus projection `Delta_j f`.
    pub fn delta_j(&self, f: &SpectralField, j: i32) -> Result<SpectralField> {
        self.check_range(j)?;
        Ok(self.delta_j_unchecked(f, j))
    }

    fn delta_j_unchecked(&self, f: &SpectralField, j: i32) -> SpectralField {
        let spec = f.spec;
        let scale = 2f64.powi(-j);
        let mut out = f.clone();
        let p = spec.points();
        for (off, k) in spec.iter_k() {
            let r = spec.xi_norm2(&k[..spec.dim]);
            let w = self.phi_at(r * scale);
            for c in 0..f.components() {
                out.coeffs_mut()[c * p + off] = f.comp(c)[off] * w;
            }
        }
        out
    }

    /// Low-pass projection `S_j f` (passes the mean through).
    pub fn s_j(&self, f: &SpectralField, j: i32) -> SpectralField {
        let spec = f.spec;
        let mut out = f.clone();
        let p = spec.points();
        for (off, k) in spec.iter_k() {
            let r = spec.xi_norm2(&k[..spec.dim]);
            let w = self.chi_scaled_at(j, r);
            for c in 0..f.components() {
                out.coeffs_mut()[c * p + off] = f.comp(c)[off] * w;
            }
        }
        out
    }

    /// All blocks `Delta_j f` for `j` in the valid range.
    pub fn block_series(&self, f: &SpectralField) -> Vec<(i32, SpectralField)> {
        self.blocks().map(|j| (j, self.delta_j_unchecked(f, j))).collect()
    }

    /// Worst partition-of-unity residual `|sum_j phi(2^-j xi) - 1|` over
    /// nonzero lattice frequencies in the dealiased band.
    pub fn partition_residual(&self) -> f64 {
        let spec = self.spec;
        let kmax = spec.dealias_kmax();
        let mut worst = 0.0f64;
        for (_, k) in spec.iter_k() {
            if k[..spec.dim].iter().any(|ki| ki.abs() > kmax) {
                continue;
            }
            let r = spec.xi_norm2(&k[..spec.dim]);
            if r == 0.0 {
                continue;
            }
            let sum: f64 = self.blocks().map(|j| self.phi_at(r * 2f64.powi(-j))).sum();
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }

    /// Worst residual of `chi(xi) + sum_{j>=0} phi(2^-j xi) = 1` on the band.
    pub fn chi_partition_residual(&self) -> f64 {
        let spec = self.spec;
        let kmax = spec.dealias_kmax();
        let mut worst = 0.0f64;
        for (_, k) in spec.iter_k() {
            if k[..spec.dim].iter().any(|ki| ki.abs() > kmax) {
                continue;
            }
            let r = spec.xi_norm2(&k[..spec.dim]);
            let sum: f64 = (0..=(self.j_max + 1))
                .map(|j| self.phi_at(r * 2f64.powi(-j)))
                .sum::<f64>()
                + self.chi_at(r);
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }
}

/// Bony paraproduct decomposition of the product of two scalar fields:
/// `T_u v = sum_j S_{j-1}u Delta_j v`, `R(u,v) = sum_j Delta_j u Dtilde_j v`.
/// For zero-mean inputs `T_u v + T_v u + R(u, v)` reconstructs the dealiased
/// product exactly.
pub fn bony_decompose(
    u: &SpectralField,
    v: &SpectralField,
    dec: &DyadicDecomposition,
) -> Result<(SpectralField, SpectralField, SpectralField)> {
    if u.components() != 1 || v.components() != 1 {
        return Err(CoreError::ComponentMismatch { got: u.components().max(v.components()), want: 1 });
    }
    let spec = u.spec;
    let pts = spec.points();

    // physical representations of every block and low-pass
    let mut du_phys = Vec::new();
    let mut dv_phys = Vec::new();
    let mut su_phys = Vec::new();
    let mut sv_phys = Vec::new();
    for j in dec.blocks() {
        du_phys.push(inverse_transform(&dec.delta_j_unchecked(u, j)));
        dv_phys.push(inverse_transform(&dec.delta_j_unchecked(v, j)));
        su_phys.push(inverse_transform(&dec.s_j(u, j - 1)));
        sv_phys.push(inverse_transform(&dec.s_j(v, j - 1)));
    }

    let nblocks = (dec.j_max - dec.j_min + 1) as usize;
    let mut tuv = vec![Complex64::ZERO; pts];
    let mut tvu = vec![Complex64::ZERO; pts];
    let mut ruv = vec![Complex64::ZERO; pts];
    for bj in 0..nblocks {
        for x in 0..pts {
            tuv[x] += su_phys[bj][x] * dv_phys[bj][x];
            tvu[x] += sv_phys[bj][x] * du_phys[bj][x];
        }
        for bjp in bj.saturating_sub(1)..(bj + 2).min(nblocks) {
            for x in 0..pts {
                ruv[x] += du_phys[bj][x] * dv_phys[bjp][x];
            }
        }
    }

    let finish = |phys: Vec<Complex64>| -> SpectralField {
        let mut f = forward_transform_complex(&phys, spec, 1).expect("shape");
        f.set_real_symmetric(u.is_real_symmetric() && v.is_real_symmetric());
        f.dealias_in_place();
        f
    };
    Ok((finish(tuv), finish(tvu), finish(ruv)))
}

/// Ratios instrumenting the dyadic derivative inequalities for a
/// block-localized field.
#[derive(Debug, Clone, Copy)]
pub struct BernsteinRatio {
    /// `sup_{|a|=k} ||d^a Delta_j f||_q / (2^{j(k + d(1/p - 1/q))} ||Delta_j f||_p)`
    pub direct: f64,
    /// Companion for the annulus lower bound:
    /// `sup_{|a|=k} ||d^a Delta_j f||_p / (2^{jk} ||Delta_j f||_p)`
    pub annulus: f64,
}

/// Multi-indices of total order k (k <= 2 supported; higher orders are not
/// needed by any monitor).
fn multi_indices(dim: usize, k: usize) -> Vec<Vec<usize>> {
    match k {
        0 => vec![vec![]],
        1 => (0..dim).map(|a| vec![a]).collect(),
        2 => {
            let mut v = Vec::new();
            for a in 0..dim {
                for b in a..dim {
                    v.push(vec![a, b]);
                }
            }
            v
        }
        _ => panic!("derivative order {k} not supported"),
    }
}

pub fn bernstein_ratio(
    f: &SpectralField,
    j: i32,
    p: f64,
    q: f64,
    k: usize,
    dec: &DyadicDecomposition,
) -> Result<BernsteinRatio> {
    if !(q >= p && p >= 1.0) {
        return Err(CoreError::InadmissibleExponents { p, q, mode: "bernstein (need q >= p >= 1)".into() });
    }
    let block = dec.delta_j(f, j)?;
    let base_p = crate::norms::lp_norm(&block, p);
    if base_p == 0.0 {
        return Err(CoreError::EmptyBlock);
    }
    let dim = f.spec.dim as f64;
    let mut sup_q = 0.0f64;
    let mut sup_p = 0.0f64;
    for alpha in multi_indices(f.spec.dim, k) {
        let mut g = block.clone();
        for &axis in &alpha {
            g = crate::ops::partial(&g, axis);
        }
        sup_q = sup_q.max(crate::norms::lp_norm(&g, q));
        sup_p = sup_p.max(crate::norms::lp_norm(&g, p));
    }
    let lam = 2f64.powi(j);
    let inv_p = 1.0 / p;
    let inv_q = if q.is_infinite() { 0.0 } else { 1.0 / q };
    let direct = sup_q / (lam.powf(k as f64 + dim * (inv_p - inv_q)) * base_p);
    let annulus = sup_p / (lam.powi(k as i32) * base_p);
    Ok(BernsteinRatio { direct, annulus })
}
