use num_complex::Complex64;

/// A Fourier multiplier symbol: a pure, deterministic function of the
/// physical frequency vector `xi` (components `2*pi*k_i / box_length`).
pub trait FrequencySymbol {
    fn eval(&self, xi: &[f64]) -> Complex64;
}

/// Wrap a closure as a symbol.
pub struct FnSymbol<F: Fn(&[f64]) -> Complex64>(pub F);

impl<F: Fn(&[f64]) -> Complex64> FrequencySymbol for FnSymbol<F> {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        (self.0)(xi)
    }
}

/// Real radial/even symbols given as `f(xi) -> f64`.
pub struct RealSymbol<F: Fn(&[f64]) -> f64>(pub F);

impl<F: Fn(&[f64]) -> f64> FrequencySymbol for RealSymbol<F> {
    fn eval(&self, xi: &[f64]) -> Complex64 {
        Complex64::new((self.0)(xi), 0.0)
    }
}

pub fn xi_l1(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v.abs()).sum()
}

pub fn xi_l2(xi: &[f64]) -> f64 {
    xi.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `|xi|_1` multiplier symbol.
pub fn lambda1() -> impl FrequencySymbol {
    RealSymbol(|xi: &[f64]| xi_l1(xi))
}

/// `|xi|` multiplier symbol (the square root of the Laplacian).
pub fn lambda() -> impl FrequencySymbol {
    RealSymbol(|xi: &[f64]| xi_l2(xi))
}

/// `-|xi|^2` (Laplacian) symbol.
pub fn laplacian_symbol() -> impl FrequencySymbol {
    RealSymbol(|xi: &[f64]| -xi.iter().map(|v| v * v).sum::<f64>())
}
