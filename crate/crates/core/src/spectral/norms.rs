use serde::{Deserialize, Serialize};

use super::RealField;

/// `Σ w(ξ_k)|F_k|²·L/n²`, the Parseval form of `∫ w(ξ)|f̂|² dξ`.
fn weighted(f: &RealField, w: impl Fn(f64) -> f64) -> f64 {
    let g = f.grid();
    let s: f64 =
        f.spectrum().iter().enumerate().map(|(k, z)| w(g.wavenumber(k)) * z.norm_sqr()).sum();
    s * g.length / (g.n as f64 * g.n as f64)
}

pub fn l2(f: &RealField) -> f64 {
    weighted(f, |_| 1.0).sqrt()
}

/// `(∫(1 + ξ²)^s |f̂|²)^{1/2}`
pub fn h_s(f: &RealField, s: f64) -> f64 {
    weighted(f, |xi| (1.0 + xi * xi).powf(s)).sqrt()
}

/// `(∫(1 + ε⁻²(|ξ| − |ω|)²)|f̂|²)^{1/2}`
pub fn scaled_e_omega(f: &RealField, omega: f64, eps: f64) -> f64 {
    let w0 = omega.abs();
    weighted(f, |xi| {
        let d = xi.abs() - w0;
        1.0 + d * d / (eps * eps)
    })
    .sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Norms {
    pub l2: f64,
    pub h1: f64,
    pub h2: f64,
}

impl Norms {
    pub fn of(f: &RealField) -> Self {
        Self { l2: l2(f), h1: h_s(f, 1.0), h2: h_s(f, 2.0) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;
    use std::f64::consts::PI;

    #[test]
    fn parseval_cosine() {
        let l = 20.0 * PI;
        let g = PeriodicGrid::new(256, l).unwrap();
        let om = 2.0;
        let f = RealField::from_fn(g, |a| (om * a).cos());
        assert!((l2(&f).powi(2) - l / 2.0).abs() < 1e-10);
        assert!((l2(&f) - h_s(&f, 0.0)).abs() < 1e-14);
        assert!((h_s(&f, 1.0).powi(2) - 5.0 * l / 2.0).abs() < 1e-9);
        // trapezoid agrees with Parseval
        assert!((f.inner(&f).unwrap() - l / 2.0).abs() < 1e-10);
        // in-band pure mode: the scaled norm is the L² norm
        assert!((scaled_e_omega(&f, -om, 0.1) - l2(&f)).abs() < 1e-12);
    }

    #[test]
    fn scaled_norm_of_modulated_envelope() {
        // ‖ερ(εα)cos(ωα)‖ scales like ε^{1/2}
        let om = 1.5;
        let norm_at = |eps: f64| {
            let l = 80.0 / eps;
            let n = (l * om * 4.0 / PI).log2().ceil().exp2() as usize;
            let g = PeriodicGrid::new(n, l).unwrap();
            let f = RealField::from_fn(g, |a| eps / (eps * a).cosh() * (om * a).cos());
            scaled_e_omega(&f, om, eps)
        };
        let r = norm_at(0.04) / norm_at(0.02);
        assert!((r / 2f64.sqrt() - 1.0).abs() < 0.1, "{r}");
    }
}
