use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::grid::GridSpec;

/// Fourier coefficients of a (possibly vector-valued) field on the torus.
///
/// Coefficients use the amplitude convention: `f(x) = sum_k coeffs(k) e^{i xi_k . x}`,
/// so a single mode `cos(x_1)` carries `1/2` at `k = (+-1, 0, .., 0)`. Storage is
/// component-major, each component a flat row-major array over the FFT frequency
/// layout of [`GridSpec`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub spec: GridSpec,
    components: usize,
    data: Vec<Complex64>,
    /// Whether the field is the transform of a real-valued field
    /// (Hermitian symmetry `coeffs(-k) = conj(coeffs(k))` expected to hold).
    real_symmetric: bool,
}

impl SpectralField {
    pub fn zeros(spec: GridSpec, components: usize) -> Self {
        assert!(components >= 1, "need at least one component");
        Self {
            spec,
            components,
            data: vec![Complex64::ZERO; components * spec.points()],
            real_symmetric: true,
        }
    }

    pub fn from_coeffs(spec: GridSpec, components: usize, data: Vec<Complex64>, real_symmetric: bool) -> Result<Self> {
        let want = components * spec.points();
        if data.len() != want {
            return Err(CoreError::ShapeMismatch { got: data.len(), want });
        }
        Ok(Self { spec, components, data, real_symmetric })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_real_symmetric(&self) -> bool {
        self.real_symmetric
    }

    pub fn set_real_symmetric(&mut self, v: bool) {
        self.real_symmetric = v;
    }

    /// Coefficient slice of one component.
    pub fn comp(&self, c: usize) -> &[Complex64] {
        let p = self.spec.points();
        &self.data[c * p..(c + 1) * p]
    }

    pub fn comp_mut(&mut self, c: usize) -> &mut [Complex64] {
        let p = self.spec.points();
        &mut self.data[c * p..(c + 1) * p]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.data
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Extract a single component as a scalar field.
    pub fn component_field(&self, c: usize) -> SpectralField {
        SpectralField {
            spec: self.spec,
            components: 1,
            data: self.comp(c).to_vec(),
            real_symmetric: self.real_symmetric,
        }
    }

    /// Stack scalar fields into one vector field.
    pub fn from_components(parts: &[SpectralField]) -> SpectralField {
        assert!(!parts.is_empty());
        let spec = parts[0].spec;
        let mut data = Vec::with_capacity(parts.len() * spec.points());
        let mut real = true;
        for p in parts {
            assert_eq!(p.spec, spec);
            assert_eq!(p.components, 1);
            real &= p.real_symmetric;
            data.extend_from_slice(&p.data);
        }
        SpectralField { spec, components: parts.len(), data, real_symmetric: real }
    }

    /// Coefficient at integer frequency `k` of component `c`.
    pub fn at(&self, c: usize, k: &[i64]) -> Complex64 {
        self.comp(c)[self.offset_of_k(k)]
    }

    pub fn set(&mut self, c: usize, k: &[i64], v: Complex64) {
        let off = self.offset_of_k(k);
        self.comp_mut(c)[off] = v;
    }

    pub fn offset_of_k(&self, k: &[i64]) -> usize {
        assert_eq!(k.len(), self.spec.dim);
        let mut off = 0usize;
        for d in 0..self.spec.dim {
            off = off * self.spec.n + self.spec.index_of_k(k[d]);
        }
        off
    }

    /// Zero the mean (k = 0 mode) of every component.
    pub fn zero_mean(&mut self) {
        let p = self.spec.points();
        for c in 0..self.components {
            self.data[c * p] = Complex64::ZERO;
        }
    }

    pub fn mean(&self, c: usize) -> Complex64 {
        self.comp(c)[0]
    }

    /// Zero every coefficient with a Nyquist index on any axis.
    pub fn zero_nyquist(&mut self) {
        let nyq = -(self.spec.n as i64) / 2;
        let spec = self.spec;
        let p = spec.points();
        for (off, k) in spec.iter_k() {
            if k[..spec.dim].contains(&nyq) {
                for c in 0..self.components {
                    self.data[c * p + off] = Complex64::ZERO;
                }
            }
        }
    }

    /// 2/3-rule dealiasing: zero coefficients with any `|k_i| > n/3`.
    pub fn dealias(&self) -> SpectralField {
        let mut out = self.clone();
        out.dealias_in_place();
        out
    }

    pub fn dealias_in_place(&mut self) {
        let kmax = self.spec.dealias_kmax();
        let spec = self.spec;
        let p = spec.points();
        for (off, k) in spec.iter_k() {
            if k[..spec.dim].iter().any(|ki| ki.abs() > kmax) {
                for c in 0..self.components {
                    self.data[c * p + off] = Complex64::ZERO;
                }
            }
        }
    }

    /// Largest coefficient modulus over all components and frequencies.
    pub fn max_coeff_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry, for validating the real flag.
    pub fn hermitian_residual(&self) -> f64 {
        let spec = self.spec;
        let p = spec.points();
        let mut worst = 0.0f64;
        for (off, k) in spec.iter_k() {
            // Frequencies whose mirror leaves the lattice (Nyquist) are skipped.
            let mut mk = [0i64; 3];
            let mut ok = true;
            for d in 0..spec.dim {
                mk[d] = -k[d];
                if mk[d] == spec.n as i64 / 2 {
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let moff = {
                let mut o = 0usize;
                for d in 0..spec.dim {
                    o = o * spec.n + spec.index_of_k(mk[d]);
                }
                o
            };
            for c in 0..self.components {
                let r = (self.data[c * p + off] - self.data[c * p + moff].conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    pub fn scale(&mut self, s: f64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    pub fn scaled(&self, s: f64) -> SpectralField {
        let mut out = self.clone();
        out.scale(s);
        out
    }

    pub fn add_assign_scaled(&mut self, other: &SpectralField, s: f64) {
        assert_eq!(self.data.len(), other.data.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
        self.real_symmetric &= other.real_symmetric;
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.add_assign_scaled(other, -1.0);
        out
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        let mut out = self.clone();
        out.add_assign_scaled(other, 1.0);
        out
    }

    /// Relative l2 distance between coefficient arrays (0 for two zero fields).
    pub fn rel_l2_distance(&self, other: &SpectralField) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in self.data.iter().zip(&other.data) {
            num += (a - b).norm_sqr();
            den += a.norm_sqr().max(b.norm_sqr());
        }
        if den == 0.0 {
            0.0
        } else {
            (num / den).sqrt()
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dealias_zeroes_high_modes() {
        let spec = GridSpec::torus(1, 16).unwrap();
        let mut f = SpectralField::zeros(spec, 1);
        f.set(0, &[7], Complex64::new(1.0, 0.0));
        f.set(0, &[5], Complex64::new(2.0, 0.0));
        let g = f.dealias();
        assert_eq!(g.at(0, &[7]), Complex64::ZERO);
        assert_eq!(g.at(0, &[5]), Complex64::new(2.0, 0.0));
    }

    #[test]
    fn nyquist_mode_is_dropped() {
        let spec = GridSpec::torus(1, 16).unwrap();
        let mut f = SpectralField::zeros(spec, 1);
        f.set(0, &[-8], Complex64::new(1.0, 0.0));
        f.zero_nyquist();
        assert_eq!(f.at(0, &[-8]), Complex64::ZERO);
    }
}
