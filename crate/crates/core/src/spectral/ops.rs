use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{fft, ComplexField, RealField};
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Hilbert transform, symbol `−i·sgn(ξ)`; `H cos = sin`.
pub fn hilbert(f: &RealField) -> RealField {
    f.apply_multiplier(|xi| -I * xi.signum() * f64::from(xi != 0.0))
}

/// `|D| = ∂H`, symbol `|ξ|`.
pub fn abs_d(f: &RealField) -> RealField {
    f.apply_multiplier(|xi| Complex64::new(xi.abs(), 0.0))
}

/// `∂_α`, symbol `iξ`.
pub fn d_alpha(f: &RealField) -> RealField {
    f.apply_multiplier(|xi| I * xi)
}

/// Projection onto negative frequencies, `𝐏 = (I − iH)/2`.
///
/// The symbol is 1 for `ξ < 0`, 0 for `ξ > 0` and ½ on the zero and Nyquist
/// slots, so `𝐏f + conj(𝐏f) = f` for real `f` but `𝐏` is idempotent only on
/// fields without a mean.
pub fn proj_neg(f: &ComplexField) -> ComplexField {
    let grid = *f.grid();
    let spec = f
        .spectrum()
        .iter()
        .enumerate()
        .map(|(k, &z)| {
            let xi = grid.wavenumber(k);
            let s = if grid.is_nyquist(k) || xi == 0.0 {
                0.5
            } else if xi < 0.0 {
                1.0
            } else {
                0.0
            };
            z * s
        })
        .collect();
    ComplexField::from_spectrum(grid, spec).expect("length preserved")
}

/// Sharp spectral windows around the carrier frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// `(−|ω|−δ, −|ω|+δ) ∪ (|ω|−δ, |ω|+δ)`
    Chi,
    /// `(|ω|−δ, |ω|+δ)`
    ChiPlus,
    /// `(−|ω|−δ, −|ω|+δ)`
    ChiMinus,
    /// `(−δ, δ)`
    Chi0,
    /// `1 − χ`
    Complement,
}

pub fn window_symbol(w: Window, omega: f64, delta: f64, xi: f64) -> f64 {
    let w0 = omega.abs();
    let inside = |c: f64| ((xi - c).abs() < delta) as u8 as f64;
    match w {
        Window::Chi => inside(w0) + inside(-w0),
        Window::ChiPlus => inside(w0),
        Window::ChiMinus => inside(-w0),
        Window::Chi0 => inside(0.0),
        Window::Complement => 1.0 - inside(w0) - inside(-w0),
    }
}

fn check_window(omega: f64, delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < omega.abs()) {
        return Err(Error::InvalidParams(format!(
            "window half-width must satisfy 0 < delta < |omega| (delta={delta}, omega={omega})"
        )));
    }
    Ok(())
}

/// Applies a window to a complex field.
pub fn freq_window(f: &ComplexField, w: Window, omega: f64, delta: f64) -> Result<ComplexField> {
    check_window(omega, delta)?;
    let grid = *f.grid();
    let spec = f
        .spectrum()
        .iter()
        .enumerate()
        .map(|(k, &z)| z * window_symbol(w, omega, delta, grid.wavenumber(k)))
        .collect();
    ComplexField::from_spectrum(grid, spec)
}

impl RealField {
    /// Windows symmetric in `ξ` (`χ`, `χ0`, `1 − χ`) keep real fields real.
    pub fn windowed(&self, w: Window, omega: f64, delta: f64) -> Result<RealField> {
        check_window(omega, delta)?;
        if matches!(w, Window::ChiPlus | Window::ChiMinus) {
            return Err(Error::InvalidParams(
                "one-sided windows produce complex fields; use freq_window".into(),
            ));
        }
        let grid = *self.grid();
        let spec = self
            .spectrum()
            .iter()
            .enumerate()
            .map(|(k, &z)| z * window_symbol(w, omega, delta, grid.wavenumber(k)))
            .collect();
        RealField::from_spectrum(grid, spec)
    }
}

/// Product of up to five band-limited fields without aliasing.
///
/// Each factor is zero-padded to `m ≥ (p + 1)n/2` nodes, multiplied
/// pointwise and truncated back to `|k| < n/2`.
pub fn dealiased_product(factors: &[&RealField]) -> Result<RealField> {
    let p = factors.len();
    if p == 0 || p > 5 {
        return Err(Error::InvalidParams(format!("operand count must be 1..=5, got {p}")));
    }
    let grid = *factors[0].grid();
    if factors.iter().any(|f| *f.grid() != grid) {
        return Err(Error::GridMismatch("product operands".into()));
    }
    let n = grid.n;
    let m = ((p + 1) * n).div_ceil(2).next_multiple_of(2);
    let half = n / 2;
    let mut acc = vec![Complex64::new(1.0, 0.0); m];
    for f in factors {
        let src = f.spectrum();
        let scale = m as f64 / n as f64;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        buf[0] = src[0] * scale;
        for k in 1..half {
            buf[k] = src[k] * scale;
            buf[m - k] = src[n - k] * scale;
        }
        fft::inverse(&mut buf);
        for (a, b) in acc.iter_mut().zip(&buf) {
            *a *= b.re;
        }
    }
    fft::forward(&mut acc);
    let scale = n as f64 / m as f64;
    let mut spec = vec![Complex64::new(0.0, 0.0); n];
    spec[0] = acc[0] * scale;
    for k in 1..half {
        spec[k] = acc[k] * scale;
        spec[n - k] = acc[m - k] * scale;
    }
    RealField::from_spectrum(grid, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    /// `cos(2πmα/L)`
    fn cos_mode(grid: PeriodicGrid, m: f64) -> RealField {
        let k = m * grid.dk();
        RealField::from_fn(grid, |a| (k * a).cos())
    }

    fn grid() -> PeriodicGrid {
        PeriodicGrid::new(64, 2.0 * PI).unwrap()
    }

    fn random_smooth(grid: PeriodicGrid, seed: u64, modes: usize) -> RealField {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let coeffs: Vec<(f64, f64)> =
            (0..modes).map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let dk = grid.dk();
        RealField::from_fn(grid, |a| {
            coeffs
                .iter()
                .enumerate()
                .map(|(m, (c, s))| c * (m as f64 * dk * a).cos() + s * (m as f64 * dk * a).sin())
                .sum()
        })
    }

    #[test]
    fn hilbert_of_cosine() {
        let g = grid();
        for m in 1..10 {
            let h = hilbert(&cos_mode(g, m as f64));
            let s = RealField::from_fn(g, |a| (m as f64 * a).sin());
            assert!(h.sub(&s).unwrap().max_abs() < 1e-12);
        }
        let c = RealField::from_fn(g, |_| 3.0);
        assert!(hilbert(&c).max_abs() < 1e-15);
    }

    #[test]
    fn hilbert_twice() {
        let f = random_smooth(grid(), 1, 20);
        let hh = hilbert(&hilbert(&f));
        let expect = f.map(|v| -v).map(|v| v + f.mean());
        assert!(hh.sub(&expect).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn hilbert_product_identity() {
        // u² = (Hu)² − 2H(u·Hu) for u with only positive-frequency cosine pairs
        let g = grid();
        let u = RealField::from_fn(g, |a| (3.0 * a).cos() + 0.4 * (5.0 * a).cos());
        let hu = hilbert(&u);
        let lhs = dealiased_product(&[&u, &u]).unwrap();
        let rhs = dealiased_product(&[&hu, &hu])
            .unwrap()
            .sub(&hilbert(&dealiased_product(&[&u, &hu]).unwrap()).scale(2.0))
            .unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn multiplier_composition() {
        let f = random_smooth(grid(), 2, 25);
        let d = abs_d(&f);
        assert!(d.sub(&d_alpha(&hilbert(&f))).unwrap().max_abs() < 1e-11);
        assert!(d.sub(&hilbert(&d_alpha(&f))).unwrap().max_abs() < 1e-11);
        let dd = abs_d(&d);
        let lap = d_alpha(&d_alpha(&f)).scale(-1.0);
        assert!(dd.sub(&lap).unwrap().max_abs() < 1e-10);
        assert!(abs_d(&RealField::from_fn(grid(), |_| 1.0)).max_abs() < 1e-15);
    }

    #[test]
    fn abs_d_eigenfunction_and_self_adjoint() {
        let g = grid();
        let d = abs_d(&cos_mode(g, 4.0));
        assert!(d.sub(&cos_mode(g, 4.0).scale(4.0)).unwrap().max_abs() < 1e-12);
        let f = random_smooth(g, 3, 30);
        let h = random_smooth(g, 4, 30);
        let a = abs_d(&f).inner(&h).unwrap();
        let b = f.inner(&abs_d(&h)).unwrap();
        assert!((a - b).abs() < 1e-11 * a.abs().max(1.0));
    }

    #[test]
    fn projection() {
        let g = grid();
        let neg = ComplexField::from_fn(g, |a| Complex64::new(0.0, -3.0 * a).exp());
        let pos = ComplexField::from_fn(g, |a| Complex64::new(0.0, 3.0 * a).exp());
        assert!(proj_neg(&neg).sub(&neg).unwrap().max_abs() < 1e-13);
        assert!(proj_neg(&pos).max_abs() < 1e-13);

        let c = ComplexField::from_fn(g, |a| Complex64::new((3.0 * a).cos(), 0.0));
        let half = ComplexField::from_fn(g, |a| 0.5 * Complex64::new(0.0, -3.0 * a).exp());
        assert!(proj_neg(&c).sub(&half).unwrap().max_abs() < 1e-13);

        let f = random_smooth(g, 5, 20);
        let fc = ComplexField::from_parts(&f, &RealField::zeros(g)).unwrap();
        let p = proj_neg(&fc);
        let pp = proj_neg(&p);
        // idempotent away from the zero mode
        let diff = pp.sub(&p).unwrap().max_abs();
        assert!((diff - 0.25 * f.mean().abs()).abs() < 1e-12);
        let sum: Vec<f64> = p.values().iter().map(|z| 2.0 * z.re).collect();
        let back = RealField::new(g, sum).unwrap();
        assert!(back.sub(&f).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn holomorphic_reconstruction() {
        // W = HU + iU = 2i𝐏U recovers a negative-frequency field from U = Im W
        let g = grid();
        let w = ComplexField::from_fn(g, |a| Complex64::new(0.0, -4.0 * a).exp());
        let u = ComplexField::from_parts(&w.im(), &RealField::zeros(g)).unwrap();
        let rebuilt = proj_neg(&u).apply_multiplier(|_| Complex64::new(0.0, 2.0));
        assert!(rebuilt.sub(&w).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn windows() {
        let g = PeriodicGrid::new(128, 40.0 * PI).unwrap();
        let om = 1.0;
        let inband = RealField::from_fn(g, |a| (om * a).cos());
        let out = RealField::from_fn(g, |a| (3.0 * om * a).cos());
        let d = om / 4.0;
        assert!(inband.windowed(Window::Chi, om, d).unwrap().sub(&inband).unwrap().max_abs() < 1e-13);
        assert!(out.windowed(Window::Chi, om, d).unwrap().max_abs() < 1e-13);
        let f = random_smooth(g, 6, 60);
        let split = f
            .windowed(Window::Chi, om, d)
            .unwrap()
            .add(&f.windowed(Window::Complement, om, d).unwrap())
            .unwrap();
        assert!(split.sub(&f).unwrap().max_abs() < 1e-13);
        for xi in g.wavenumbers() {
            let p = window_symbol(Window::ChiPlus, om, d, xi);
            let m = window_symbol(Window::ChiMinus, om, d, xi);
            assert_eq!(p * m, 0.0);
            assert_eq!(p + m, window_symbol(Window::Chi, om, d, xi));
            assert!(window_symbol(Window::Chi, om, d, xi) <= 1.0);
        }
        assert!(f.windowed(Window::ChiPlus, om, d).is_err());
        assert!(f.windowed(Window::Chi, om, 2.0).is_err());
    }

    #[test]
    fn dealiased_square() {
        let g = grid();
        let c = cos_mode(g, 12.0);
        let sq = dealiased_product(&[&c, &c]).unwrap();
        let expect = RealField::from_fn(g, |a| 0.5 * (1.0 + (24.0 * a).cos()));
        assert!(sq.sub(&expect).unwrap().max_abs() < 1e-13);
        let z = dealiased_product(&[&c, &RealField::zeros(g)]).unwrap();
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn triple_product_against_direct_convolution() {
        let g = PeriodicGrid::new(32, 2.0 * PI).unwrap();
        let fs: Vec<RealField> = (0..3).map(|s| random_smooth(g, 10 + s, 16)).collect();
        let got = dealiased_product(&[&fs[0], &fs[1], &fs[2]]).unwrap();

        // direct sum over all index triples of the band-limited coefficients
        let n = g.n as i64;
        let coef = |f: &RealField, k: i64| -> Complex64 {
            if k.abs() >= n / 2 {
                return Complex64::new(0.0, 0.0);
            }
            f.spectrum()[k.rem_euclid(n) as usize] / n as f64
        };
        let mut spec = vec![Complex64::new(0.0, 0.0); g.n];
        for k in -(n / 2) + 1..n / 2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in -(n / 2) + 1..n / 2 {
                for b in -(n / 2) + 1..n / 2 {
                    acc += coef(&fs[0], a) * coef(&fs[1], b) * coef(&fs[2], k - a - b);
                }
            }
            spec[k.rem_euclid(n) as usize] = acc * n as f64;
        }
        let oracle = RealField::from_spectrum(g, spec).unwrap();
        assert!(got.sub(&oracle).unwrap().max_abs() < 1e-12);
        assert!(dealiased_product(&[]).is_err());
    }
}
