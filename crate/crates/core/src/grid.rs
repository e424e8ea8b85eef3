use crate::error::{CoreError, Result};

/// Uniform periodic grid on `[0, box_length)^dim` with `n` points per axis.
///
/// `n` must be a power of two (and at least 8) so that the dyadic block
/// range of the frequency lattice is clean. Physical frequencies are
/// `xi = 2*pi*k / box_length` for integer `k in [-n/2, n/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub dim: usize,
    pub n: usize,
    pub box_length: f64,
}

impl GridSpec {
    pub fn new(dim: usize, n: usize, box_length: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(CoreError::InvalidGrid(format!("dim must be 1, 2 or 3, got {dim}")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(CoreError::InvalidGrid(format!(
                "n must be a power of two >= 8, got {n}"
            )));
        }
        if !(box_length > 0.0) {
            return Err(CoreError::InvalidGrid(format!(
                "box_length must be positive, got {box_length}"
            )));
        }
        Ok(Self { dim, n, box_length })
    }

    /// Default torus `[0, 2*pi)^dim`.
    pub fn torus(dim: usize, n: usize) -> Result<Self> {
        Self::new(dim, n, std::f64::consts::TAU)
    }

    /// Number of lattice points (= number of Fourier modes) per component.
    pub fn points(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Physical grid spacing.
    pub fn dx(&self) -> f64 {
        self.box_length / self.n as f64
    }

    /// Cell volume of the quadrature rule.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    /// Fundamental physical frequency `2*pi / box_length` (1 on the default torus).
    pub fn xi0(&self) -> f64 {
        std::f64::consts::TAU / self.box_length
    }

    /// Integer frequency for a storage index along one axis (FFT layout:
    /// `0, 1, ..., n/2-1, -n/2, ..., -1`).
    #[inline]
    pub fn k_of_index(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Storage index of an integer frequency along one axis.
    #[inline]
    pub fn index_of_k(&self, k: i64) -> usize {
        let n = self.n as i64;
        debug_assert!(k >= -n / 2 && k < n / 2);
        (if k < 0 { k + n } else { k }) as usize
    }

    /// Largest per-axis integer frequency kept by the 2/3 dealias rule.
    pub fn dealias_kmax(&self) -> i64 {
        (self.n / 3) as i64
    }

    /// Decode a flat storage offset into the integer frequency vector.
    pub fn k_vec_of_offset(&self, mut off: usize) -> Vec<i64> {
        let mut idx = vec![0usize; self.dim];
        for d in (0..self.dim).rev() {
            idx[d] = off % self.n;
            off /= self.n;
        }
        idx.into_iter().map(|i| self.k_of_index(i)).collect()
    }

    /// Iterate all flat offsets together with their integer frequency vectors.
    pub fn iter_k(&self) -> impl Iterator<Item = (usize, [i64; 3])> + '_ {
        let total = self.points();
        (0..total).map(move |off| {
            let mut k = [0i64; 3];
            let mut rem = off;
            for d in (0..self.dim).rev() {
                k[d] = self.k_of_index(rem % self.n);
                rem /= self.n;
            }
            (off, k)
        })
    }

    /// Euclidean magnitude of the physical frequency at integer lattice point `k`.
    pub fn xi_norm2(&self, k: &[i64]) -> f64 {
        let x0 = self.xi0();
        (k.iter().map(|&ki| (ki * ki) as f64).sum::<f64>()).sqrt() * x0
    }

    /// l1 magnitude of the physical frequency at integer lattice point `k`.
    pub fn xi_norm1(&self, k: &[i64]) -> f64 {
        let x0 = self.xi0();
        k.iter().map(|&ki| ki.unsigned_abs() as f64).sum::<f64>() * x0
    }
}
