use std::io::{self, Write};
use std::sync::OnceLock;

use rustfft::num_complex::Complex64;

use super::{fft, fmt_f64, PeriodicGrid};
use crate::{Error, Result};

/// Real samples on a periodic grid with a write-once spectral cache.
#[derive(Debug, Clone)]
pub struct RealField {
    grid: PeriodicGrid,
    values: Vec<f64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl RealField {
    pub fn new(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::GridMismatch(format!(
                "{} samples on a grid of {}",
                values.len(),
                grid.n
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite sample at node {j}")));
        }
        Ok(Self { grid, values, spectrum: OnceLock::new() })
    }

    pub(crate) fn from_vec_unchecked(grid: PeriodicGrid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.n);
        Self { grid, values, spectrum: OnceLock::new() }
    }

    pub fn zeros(grid: PeriodicGrid) -> Self {
        Self::from_vec_unchecked(grid, vec![0.0; grid.n])
    }

    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_vec_unchecked(grid, grid.nodes().into_iter().map(f).collect())
    }

    /// Real part of the inverse transform of `spec`.
    pub fn from_spectrum(grid: PeriodicGrid, mut spec: Vec<Complex64>) -> Result<Self> {
        if spec.len() != grid.n {
            return Err(Error::GridMismatch(format!(
                "{} coefficients on a grid of {}",
                spec.len(),
                grid.n
            )));
        }
        fft::inverse(&mut spec);
        Ok(Self::from_vec_unchecked(grid, spec.into_iter().map(|z| z.re).collect()))
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut buf: Vec<Complex64> =
                self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            fft::forward(&mut buf);
            buf
        })
    }

    /// Applies the Fourier multiplier `m(ξ)`; `m` must satisfy
    /// `m(−ξ) = conj m(ξ)` for the result to be real. The Nyquist slot is zeroed.
    pub fn apply_multiplier(&self, m: impl Fn(f64) -> Complex64) -> RealField {
        let grid = self.grid;
        let spec: Vec<Complex64> = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(k, &z)| if grid.is_nyquist(k) { Complex64::new(0.0, 0.0) } else { z * m(grid.wavenumber(k)) })
            .collect();
        RealField::from_spectrum(grid, spec).expect("length preserved")
    }

    fn check_same_grid(&self, other: &RealField) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self.grid, other.grid)));
        }
        Ok(())
    }

    pub fn zip_with(&self, other: &RealField, f: impl Fn(f64, f64) -> f64) -> Result<RealField> {
        self.check_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(RealField::from_vec_unchecked(self.grid, values))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RealField {
        RealField::from_vec_unchecked(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn add(&self, other: &RealField) -> Result<RealField> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RealField) -> Result<RealField> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product on the grid, aliasing included.
    pub fn mul_pointwise(&self, other: &RealField) -> Result<RealField> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> RealField {
        self.map(|v| s * v)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.grid.n as f64
    }

    /// Trapezoid rule, spectrally accurate for smooth periodic samples.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.spacing()
    }

    /// `⟨f, g⟩ = ∫ f g dα` by the trapezoid rule.
    pub fn inner(&self, other: &RealField) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum::<f64>()
            * self.grid.spacing())
    }

    /// `(f(α) − f(−α))/2`
    pub fn odd_part(&self) -> RealField {
        let g = self.grid;
        let values = (0..g.n).map(|j| 0.5 * (self.values[j] - self.values[g.mirror(j)])).collect();
        RealField::from_vec_unchecked(g, values)
    }

    /// `(f(α) + f(−α))/2`
    pub fn even_part(&self) -> RealField {
        let g = self.grid;
        let values = (0..g.n).map(|j| 0.5 * (self.values[j] + self.values[g.mirror(j)])).collect();
        RealField::from_vec_unchecked(g, values)
    }

    /// Band-limited interpolation onto a grid with the same period and `n`
    /// nodes (zero-padding or truncation of the spectrum).
    pub fn resample(&self, n: usize) -> Result<RealField> {
        let target = PeriodicGrid::new(n, self.grid.length)?;
        let src = self.spectrum();
        let half = self.grid.n.min(n) / 2;
        let scale = n as f64 / self.grid.n as f64;
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        spec[0] = src[0] * scale;
        for k in 1..half {
            spec[k] = src[k] * scale;
            spec[n - k] = src[self.grid.n - k] * scale;
        }
        RealField::from_spectrum(target, spec)
    }

    /// CSV with header `alpha,value`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "alpha,value")?;
        for (j, v) in self.values.iter().enumerate() {
            writeln!(w, "{},{}", fmt_f64(self.grid.node(j)), fmt_f64(*v))?;
        }
        Ok(())
    }

    /// CSV with header `freq,re,im`, frequencies in ascending order.
    pub fn write_spectrum_csv<W: Write>(&self, w: W) -> io::Result<()> {
        write_spectrum(&self.grid, self.spectrum(), w)
    }
}

fn write_spectrum<W: Write>(grid: &PeriodicGrid, spec: &[Complex64], mut w: W) -> io::Result<()> {
    writeln!(w, "freq,re,im")?;
    let n = grid.n;
    for i in 0..n {
        let k = (i + n / 2 + 1) % n;
        writeln!(w, "{},{},{}", fmt_f64(grid.wavenumber(k)), fmt_f64(spec[k].re), fmt_f64(spec[k].im))?;
    }
    Ok(())
}

/// Complex samples on a periodic grid, e.g. the holomorphic unknowns `W`, `Q`.
#[derive(Debug, Clone)]
pub struct ComplexField {
    grid: PeriodicGrid,
    values: Vec<Complex64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl ComplexField {
    pub fn new(grid: PeriodicGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n {
            return Err(Error::GridMismatch(format!(
                "{} samples on a grid of {}",
                values.len(),
                grid.n
            )));
        }
        if let Some(j) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!("non-finite sample at node {j}")));
        }
        Ok(Self { grid, values, spectrum: OnceLock::new() })
    }

    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().into_iter().map(f).collect();
        Self { grid, values, spectrum: OnceLock::new() }
    }

    pub fn from_spectrum(grid: PeriodicGrid, spec: Vec<Complex64>) -> Result<Self> {
        if spec.len() != grid.n {
            return Err(Error::GridMismatch(format!(
                "{} coefficients on a grid of {}",
                spec.len(),
                grid.n
            )));
        }
        let mut values = spec.clone();
        fft::inverse(&mut values);
        let cache = OnceLock::new();
        let _ = cache.set(spec);
        Ok(Self { grid, values, spectrum: cache })
    }

    /// `re + i·im`
    pub fn from_parts(re: &RealField, im: &RealField) -> Result<Self> {
        if re.grid() != im.grid() {
            return Err(Error::GridMismatch("real and imaginary parts".into()));
        }
        let values =
            re.values().iter().zip(im.values()).map(|(&a, &b)| Complex64::new(a, b)).collect();
        Self::new(*re.grid(), values)
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut buf = self.values.clone();
            fft::forward(&mut buf);
            buf
        })
    }

    pub fn re(&self) -> RealField {
        RealField::from_vec_unchecked(self.grid, self.values.iter().map(|z| z.re).collect())
    }

    pub fn im(&self) -> RealField {
        RealField::from_vec_unchecked(self.grid, self.values.iter().map(|z| z.im).collect())
    }

    pub fn apply_multiplier(&self, m: impl Fn(f64) -> Complex64) -> ComplexField {
        let grid = self.grid;
        let spec = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(k, &z)| z * m(grid.wavenumber(k)))
            .collect();
        ComplexField::from_spectrum(grid, spec).expect("length preserved")
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn sub(&self, other: &ComplexField) -> Result<ComplexField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("complex fields".into()));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        ComplexField::new(self.grid, values)
    }

    /// Fraction of spectral energy at strictly positive frequencies.
    pub fn positive_frequency_fraction(&self) -> f64 {
        let spec = self.spectrum();
        let total: f64 = spec.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let pos: f64 = (1..self.grid.n / 2).map(|k| spec[k].norm_sqr()).sum();
        pos / total
    }

    /// CSV with header `alpha,re,im`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "alpha,re,im")?;
        for (j, z) in self.values.iter().enumerate() {
            writeln!(w, "{},{},{}", fmt_f64(self.grid.node(j)), fmt_f64(z.re), fmt_f64(z.im))?;
        }
        Ok(())
    }

    pub fn write_spectrum_csv<W: Write>(&self, w: W) -> io::Result<()> {
        write_spectrum(&self.grid, self.spectrum(), w)
    }
}
