//! Even fields in the cosine basis `U(α) = Σ_k a_k cos(2πkα/L)`, `0 ≤ k < n/2`.

use rustfft::num_complex::Complex64;

use super::{PeriodicGrid, RealField};
use crate::{Error, Result};

/// Cosine coefficients of the even part of `f`.
///
/// With nodes offset by `−L/2`, `a_0 = F_0/n` and `a_k = 2(−1)^k Re F_k/n`.
pub fn to_cosine(f: &RealField) -> Vec<f64> {
    let n = f.grid().n;
    let spec = f.spectrum();
    (0..n / 2)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            if k == 0 { spec[0].re / n as f64 } else { 2.0 * s * spec[k].re / n as f64 }
        })
        .collect()
}

/// Even field with the given cosine coefficients.
pub fn from_cosine(grid: PeriodicGrid, a: &[f64]) -> Result<RealField> {
    if a.len() != grid.n / 2 {
        return Err(Error::GridMismatch(format!(
            "{} cosine coefficients for a grid of {}",
            a.len(),
            grid.n
        )));
    }
    RealField::from_spectrum(grid, cosine_spectrum(grid.n, a))
}

pub(crate) fn cosine_spectrum(n: usize, a: &[f64]) -> Vec<Complex64> {
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    spec[0] = Complex64::new(a[0] * n as f64, 0.0);
    for k in 1..n / 2 {
        let s = if k % 2 == 0 { 1.0 } else { -1.0 };
        let z = Complex64::new(0.5 * s * a[k] * n as f64, 0.0);
        spec[k] = z;
        spec[n - k] = z;
    }
    spec
}
