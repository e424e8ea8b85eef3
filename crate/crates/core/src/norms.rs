use crate::dyadic::DyadicDecomposition;
use crate::error::{CoreError, Result};
use crate::field::SpectralField;
use crate::transform::inverse_transform;

/// Regularity / integrability / summability triple `(s, p, r)` of a dyadic
/// frequency norm. `p` and `r` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovIndex {
    pub s: f64,
    pub p: f64,
    pub r: f64,
}

impl BesovIndex {
    pub fn new(s: f64, p: f64, r: f64) -> Self {
        assert!(s.is_finite(), "regularity index must be finite");
        assert!(p >= 1.0 && r >= 1.0, "integrability indices must be >= 1");
        Self { s, p, r }
    }
}

/// Time-space norm specification: `L^rho` in time per block on `t_grid`,
/// then the `(s, p, r)` block sum.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeNormSpec {
    pub rho: f64,
    pub t_grid: Vec<f64>,
    pub besov: BesovIndex,
}

impl TimeNormSpec {
    pub fn new(rho: f64, t_grid: Vec<f64>, besov: BesovIndex) -> Self {
        assert!(rho >= 1.0);
        assert!(!t_grid.is_empty(), "time grid must be nonempty");
        assert!(t_grid[0] >= 0.0);
        assert!(t_grid.windows(2).all(|w| w[1] > w[0]), "time grid must increase");
        Self { rho, t_grid, besov }
    }
}

/// Grid `L^p` norm by rectangle-rule quadrature (`max` for `p = inf`).
/// Vector fields take the pointwise Euclidean magnitude over components.
pub fn lp_norm(f: &SpectralField, p: f64) -> f64 {
    assert!(p >= 1.0, "p must be in [1, inf]");
    let phys = inverse_transform(f);
    let pts = f.spec.points();
    let comps = f.components();
    let mag = |x: usize| -> f64 {
        let mut s = 0.0;
        for c in 0..comps {
            s += phys[c * pts + x].norm_sqr();
        }
        s.sqrt()
    };
    if p.is_infinite() {
        return (0..pts).map(mag).fold(0.0, f64::max);
    }
    let dv = f.spec.cell_volume();
    let sum: f64 = (0..pts).map(|x| mag(x).powf(p)).sum();
    (sum * dv).powf(1.0 / p)
}

/// Per-block `L^p` norms `(j, ||Delta_j f||_p)` over the valid range.
pub fn block_norms(f: &SpectralField, p: f64, dec: &DyadicDecomposition) -> Vec<(i32, f64)> {
    dec.block_series(f)
        .into_iter()
        .map(|(j, b)| (j, lp_norm(&b, p)))
        .collect()
}

fn ell_r(weighted: impl Iterator<Item = f64>, r: f64) -> f64 {
    if r.is_infinite() {
        weighted.fold(0.0, f64::max)
    } else {
        weighted.map(|v| v.powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

/// Dyadic-block norm: `l^r` over `j` of `2^{js} ||Delta_j f||_{L^p}`.
/// The mean mode carries no block weight and is ignored.
pub fn besov_norm(f: &SpectralField, idx: BesovIndex, dec: &DyadicDecomposition) -> f64 {
    ell_r(
        block_norms(f, idx.p, dec)
            .into_iter()
            .map(|(j, b)| 2f64.powf(idx.s * j as f64) * b),
        idx.r,
    )
}

/// `L^rho` in time of a per-block norm series via trapezoidal quadrature
/// (running max for `rho = inf`).
fn time_lr(vals: &[f64], t: &[f64], rho: f64) -> f64 {
    if rho.is_infinite() {
        return vals.iter().cloned().fold(0.0, f64::max);
    }
    let mut acc = 0.0;
    for i in 1..t.len() {
        let dt = t[i] - t[i - 1];
        acc += 0.5 * dt * (vals[i - 1].powf(rho) + vals[i].powf(rho));
    }
    acc.powf(1.0 / rho)
}

/// Mixed time-space norm of a snapshot series aligned with `spec.t_grid`.
pub fn chemin_lerner_norm(
    snapshots: &[SpectralField],
    spec: &TimeNormSpec,
    dec: &DyadicDecomposition,
) -> Result<f64> {
    if snapshots.len() != spec.t_grid.len() {
        return Err(CoreError::ShapeMismatch { got: snapshots.len(), want: spec.t_grid.len() });
    }
    if !spec.rho.is_infinite() && snapshots.len() < 2 {
        return Err(CoreError::TooFewSnapshots);
    }
    let nblocks = (dec.j_max - dec.j_min + 1) as usize;
    let mut series = vec![Vec::with_capacity(snapshots.len()); nblocks];
    for snap in snapshots {
        for (bi, (_, b)) in dec.block_series(snap).into_iter().enumerate() {
            series[bi].push(lp_norm(&b, spec.besov.p));
        }
    }
    Ok(ell_r(
        series.iter().enumerate().map(|(bi, vals)| {
            let j = dec.j_min + bi as i32;
            2f64.powf(spec.besov.s * j as f64) * time_lr(vals, &spec.t_grid, spec.rho)
        }),
        spec.besov.r,
    ))
}

/// Streaming accumulator for a mixed time-space norm: feed snapshots in time
/// order, read the norm at any point. Trapezoid in time per block.
#[derive(Debug, Clone)]
pub struct NormAccumulator {
    rho: f64,
    besov: BesovIndex,
    j_min: i32,
    /// running `int ||Delta_j||^rho dt` per block (or running max for rho = inf)
    acc: Vec<f64>,
    last: Option<(f64, Vec<f64>)>,
}

impl NormAccumulator {
    pub fn new(rho: f64, besov: BesovIndex, dec: &DyadicDecomposition) -> Self {
        assert!(rho >= 1.0);
        let nblocks = (dec.j_max - dec.j_min + 1) as usize;
        Self { rho, besov, j_min: dec.j_min, acc: vec![0.0; nblocks], last: None }
    }

    pub fn push(&mut self, t: f64, f: &SpectralField, dec: &DyadicDecomposition) {
        let vals: Vec<f64> = block_norms(f, self.besov.p, dec).into_iter().map(|(_, b)| b).collect();
        if self.rho.is_infinite() {
            for (a, v) in self.acc.iter_mut().zip(&vals) {
                *a = a.max(*v);
            }
        } else if let Some((t0, prev)) = &self.last {
            let dt = t - t0;
            assert!(dt >= 0.0, "snapshots must arrive in time order");
            for (a, (v0, v1)) in self.acc.iter_mut().zip(prev.iter().zip(&vals)) {
                *a += 0.5 * dt * (v0.powf(self.rho) + v1.powf(self.rho));
            }
        }
        self.last = Some((t, vals));
    }

    /// Current norm value (0 until at least one snapshot for rho = inf,
    /// two for finite rho).
    pub fn value(&self) -> f64 {
        ell_r(
            self.acc.iter().enumerate().map(|(bi, a)| {
                let j = self.j_min + bi as i32;
                let timepart = if self.rho.is_infinite() { *a } else { a.powf(1.0 / self.rho) };
                2f64.powf(self.besov.s * j as f64) * timepart
            }),
            self.besov.r,
        )
    }
}

/// Ratio `||f||_{B^{th*s1+(1-th)*s2}} / (||f||_{B^{s1}}^th ||f||_{B^{s2}}^{1-th})`.
pub fn interpolation_check(
    f: &SpectralField,
    s1: f64,
    s2: f64,
    theta: f64,
    p: f64,
    r: f64,
    dec: &DyadicDecomposition,
) -> Result<f64> {
    assert!(s1 < s2 && theta > 0.0 && theta < 1.0);
    let mid = besov_norm(f, BesovIndex::new(theta * s1 + (1.0 - theta) * s2, p, r), dec);
    let a = besov_norm(f, BesovIndex::new(s1, p, r), dec);
    let b = besov_norm(f, BesovIndex::new(s2, p, r), dec);
    if a == 0.0 || b == 0.0 {
        return Err(CoreError::EmptyBlock);
    }
    Ok(mid / (a.powf(theta) * b.powf(1.0 - theta)))
}

/// Embedding monitor: `||f||_{B^{s - d(1/p1 - 1/p2)}_{p2, r}} / ||f||_{B^s_{p1, r}}`
/// for `p1 <= p2`.
pub fn embedding_ratio(
    f: &SpectralField,
    s: f64,
    p1: f64,
    p2: f64,
    r: f64,
    dec: &DyadicDecomposition,
) -> Result<f64> {
    if p2 < p1 {
        return Err(CoreError::InadmissibleExponents { p: p1, q: p2, mode: "embedding (need p1 <= p2)".into() });
    }
    let d = f.spec.dim as f64;
    let inv1 = 1.0 / p1;
    let inv2 = if p2.is_infinite() { 0.0 } else { 1.0 / p2 };
    let num = besov_norm(f, BesovIndex::new(s - d * (inv1 - inv2), p2, r), dec);
    let den = besov_norm(f, BesovIndex::new(s, p1, r), dec);
    if den == 0.0 {
        return Err(CoreError::EmptyBlock);
    }
    Ok(num / den)
}

/// Gradient equivalence monitor: `||grad f||_{B^{s-1}} / ||f||_{B^s}`.
pub fn gradient_equivalence_ratio(
    f: &SpectralField,
    s: f64,
    p: f64,
    r: f64,
    dec: &DyadicDecomposition,
) -> Result<f64> {
    let g = crate::ops::gradient(f)?;
    let num = besov_norm(&g, BesovIndex::new(s - 1.0, p, r), dec);
    let den = besov_norm(f, BesovIndex::new(s, p, r), dec);
    if den == 0.0 {
        return Err(CoreError::EmptyBlock);
    }
    Ok(num / den)
}
