//! Closed-form critical frequencies of the nondimensional problem.
//!
//! With `G = 1/V` the critical frequencies are the negative roots of
//! `P(k) = k⁴ − 2Gk² + 2Gk + G²`. A root `y0` of the resolvent cubic
//! `R(y) = 8y³ − 16Gy² − 4G²` factors `P` into two quadratics; only
//! `x² + √(2y0)x − G + y0 − G/√(2y0)` has real roots.
//!
//! All intermediate quantities are evaluated through `r = b/a` where
//! `z0 = a + b`, `a = 32G³`, so `z1 = (1 + r)^{-1/3}` never overflows and
//! `−2y0 + 4G = −(4G/3)(z1 − 1)²/z1` is free of cancellation. The root
//! closer to the origin is recovered from the product of the roots, since
//! `ω̃+ ≈ −G/2` is the difference of two `O(G^{1/3})` terms as `G → 0`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticSolution {
    #[serde(rename = "G")]
    pub g_recip: f64,
    /// `32G³ + 27G² + 3√3·√(27G⁴ + 64G⁵)`; informational, may be `inf` for huge `G`.
    pub z0: f64,
    pub z1: f64,
    pub y0: f64,
    pub omega_minus: f64,
    pub omega_plus: f64,
    /// Discriminant of the quadratic without real roots.
    pub first_discriminant: f64,
    /// Set when rounding pushed the inner radicand marginally below zero.
    pub clamped: bool,
    pub residuals: Residuals,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `|R(y0)| / max(1, G³)`
    pub resolvent: f64,
    /// `|P(ω−)| / max(1, G²)`
    pub omega_minus: f64,
    /// `|P(ω+)| / max(1, G²)`
    pub omega_plus: f64,
}

pub fn quartic_eval(g: f64, k: f64) -> f64 {
    let k2 = k * k;
    k2 * k2 - 2.0 * g * k2 + 2.0 * g * k + g * g
}

pub fn resolvent_eval(g: f64, y: f64) -> f64 {
    8.0 * y * y * y - 16.0 * g * y * y - 4.0 * g * g
}

/// Intermediate radicals: `(z0, z1, y0)` plus `(z1 − 1)²/z1`.
fn intermediates(g: f64) -> (f64, f64, f64, f64) {
    let s27 = (27.0 + 64.0 * g).sqrt();
    let r = (27.0 + 3.0 * 3f64.sqrt() * s27) / (32.0 * g);
    let log_term = -r.ln_1p() / 3.0;
    let z1 = log_term.exp();
    let z1m1 = log_term.exp_m1();
    let excess = z1m1 * z1m1 / z1;
    let y0 = (2.0 * g / 3.0) * (3.0 + excess);
    let z0 = g * g * (32.0 * g + 27.0 + 3.0 * 3f64.sqrt() * s27);
    (z0, z1, y0, excess)
}

/// `(z0, z1, y0)` for `G > 0`.
pub fn resolvent_root(g: f64) -> Result<(f64, f64, f64)> {
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::Domain(format!("G must be positive and finite, got {g}")));
    }
    let (z0, z1, y0, _) = intermediates(g);
    Ok((z0, z1, y0))
}

pub fn solve_quartic(g: f64) -> Result<QuarticSolution> {
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::Domain(format!("G must be positive and finite, got {g}")));
    }
    let (z0, z1, y0, excess) = intermediates(g);
    let s = (2.0 * y0).sqrt();
    let base = -(4.0 * g / 3.0) * excess;
    let first_discriminant = base - 4.0 * g / s;
    let mut radicand = base + 4.0 * g / s;
    let mut clamped = false;
    if radicand < 0.0 {
        if radicand > -1e-12 * g.max(1.0) {
            radicand = 0.0;
            clamped = true;
        } else {
            return Err(Error::Domain(format!(
                "negative inner radicand {radicand} at G = {g}"
            )));
        }
    }
    let root = radicand.sqrt();
    let omega_minus = (-s - root) / 2.0;
    // (−s + root)/2 cancels for small G. The product of the two roots is
    // q = 4G²s⁴/(s³ + 2G)² (from s⁶ = 4Gs⁴ + 4G²), so with
    // u = Gs²/(s³ + 2G), ω+ = q/ω− = 2u·(2u/ω−).
    let u = s * s / (s * (s * s / g) + 2.0);
    let omega_plus = 2.0 * u * (2.0 * u / omega_minus);
    let gp2 = g.powi(2).max(1.0);
    let residuals = Residuals {
        resolvent: resolvent_eval(g, y0).abs() / g.powi(3).max(1.0),
        omega_minus: quartic_eval(g, omega_minus).abs() / gp2,
        omega_plus: quartic_eval(g, omega_plus).abs() / gp2,
    };
    Ok(QuarticSolution {
        g_recip: g,
        z0,
        z1,
        y0,
        omega_minus,
        omega_plus,
        first_discriminant,
        clamped,
        residuals,
    })
}

/// `(ω̃−, ω̃+)` with `ω̃− < ω̃+ < 0`.
pub fn critical_frequencies_radicals(g: f64) -> Result<(f64, f64)> {
    let sol = solve_quartic(g)?;
    Ok((sol.omega_minus, sol.omega_plus))
}

/// Focusing indicator of the frequency closer to the origin:
/// `f(V) = (3/2)V|ω̃+|³ − 1`.
pub fn focusing_indicator(v: f64) -> Result<f64> {
    let (_, omega_plus) = critical_frequencies_radicals(1.0 / v)?;
    Ok(1.5 * v * omega_plus.abs().powi(3) - 1.0)
}

/// One sample of [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    #[serde(rename = "V")]
    pub v: f64,
    pub omega_plus: f64,
    pub f: f64,
    /// Number of the two critical frequencies with `(3/2)V|ω̃|³ > 1`.
    pub focusing_count: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Each sign change of `f` between consecutive samples, bisected in
    /// floating point down to adjacent doubles.
    pub sign_changes: Vec<f64>,
}

fn sweep_row(v: f64) -> Result<SweepRow> {
    let (omega_minus, omega_plus) = critical_frequencies_radicals(1.0 / v)?;
    let ind = |w: f64| 1.5 * v * w.abs().powi(3) - 1.0;
    let f = ind(omega_plus);
    let focusing_count = (ind(omega_minus) > 0.0) as u8 + (f > 0.0) as u8;
    Ok(SweepRow { v, omega_plus, f, focusing_count })
}

/// `samples` log-spaced values of `V` in `[v_lo, v_hi]`, endpoints exact.
pub fn sweep(v_lo: f64, v_hi: f64, samples: usize) -> Result<Sweep> {
    if !(v_lo > 0.0 && v_lo < v_hi && v_hi.is_finite()) || samples < 2 {
        return Err(Error::Domain(format!(
            "sweep needs 0 < V_lo < V_hi and at least 2 samples (got [{v_lo}, {v_hi}], {samples})"
        )));
    }
    let step = (v_hi / v_lo).ln() / (samples - 1) as f64;
    let rows = (0..samples)
        .map(|i| {
            let v = match i {
                0 => v_lo,
                _ if i == samples - 1 => v_hi,
                _ => v_lo * (step * i as f64).exp(),
            };
            sweep_row(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sign_changes = Vec::new();
    for w in rows.windows(2) {
        if (w[0].f > 0.0) != (w[1].f > 0.0) {
            let (mut a, mut b) = (w[0].v, w[1].v);
            let fa_pos = w[0].f > 0.0;
            loop {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if (focusing_indicator(m)? > 0.0) == fa_pos {
                    a = m;
                } else {
                    b = m;
                }
            }
            sign_changes.push(0.5 * (a + b));
        }
    }
    Ok(Sweep { rows, sign_changes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_values() {
        assert_eq!(quartic_eval(1.0, 0.0), 1.0);
        assert_eq!(quartic_eval(1.0, -1.0), -2.0);
        assert_eq!(quartic_eval(4.0, -2.0), -2.0 * 4f64.powf(1.5));
    }

    #[test]
    fn resolvent_unit() {
        // oracle: Cardano form of the single real root of
        // y³ − 2y² − 1/2 = 0 after substitution y = t + 2/3
        let (p, q) = (-4.0 / 3.0_f64, -16.0 / 27.0 - 0.5_f64);
        let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
        assert!(disc > 0.0);
        let t = (-q / 2.0 + disc.sqrt()).cbrt() + (-q / 2.0 - disc.sqrt()).cbrt();
        let y_ref = t + 2.0 / 3.0;
        let (_, _, y0) = resolvent_root(1.0).unwrap();
        assert!((y0 - y_ref).abs() < 1e-13, "{y0} vs {y_ref}");
        // quoted as ≈ 2.1118; the root is 2.112085
        assert!((y0 - 2.1118).abs() < 5e-4);
        assert!(resolvent_eval(1.0, y0).abs() < 1e-12);
    }

    #[test]
    fn resolvent_lower_bound() {
        for e in -8..=8 {
            let g = 10f64.powi(e);
            let (_, _, y0) = resolvent_root(g).unwrap();
            assert!(y0 >= 2.0 * g);
        }
    }

    #[test]
    fn large_g_resolvent_offset() {
        // y0 = 2G + G²/(2y0²) → 2G + 1/8; the tighter bound 2G + 1/12 fails
        let g = 1e8;
        let (_, _, y0) = resolvent_root(g).unwrap();
        assert!(y0 > 2.0 * g);
        assert!((y0 - 2.0 * g - 0.125).abs() < 1e-6, "{}", y0 - 2.0 * g);
        assert!(y0 > 2.0 * g + 1.0 / 12.0);
        let lo = 2f64.powf(4.0 / 3.0) / 3.0 * g.powf(2.0 / 3.0);
        assert!(y0 > lo);
    }

    #[test]
    fn unit_g_roots() {
        // companion-matrix roots of k⁴ − 2k² + 2k + 1: −1.6837716, −0.3715070
        let (wm, wp) = critical_frequencies_radicals(1.0).unwrap();
        assert!((wm - -1.6838).abs() < 1e-4, "{wm}");
        assert!((wp - -0.3714).abs() < 2e-4, "{wp}");
        assert!((wp - -0.371_506_974).abs() < 1e-8, "{wp}");
    }

    #[test]
    fn small_g_asymptotics() {
        // ω̃+ = −G/2 + O(G^{5/3}); ω̃− ≈ −(2G)^{1/3}. The cube-root bracket
        // (−2^{1/3}G^{1/3}/√3, −G^{1/3}/√3) does not contain either root.
        let g = 1e-8_f64;
        let (wm, wp) = critical_frequencies_radicals(g).unwrap();
        assert!((wp / (-g / 2.0) - 1.0).abs() < 1e-4, "{wp}");
        assert!((wm / -(2.0 * g).cbrt() - 1.0).abs() < 1e-2, "{wm}");
        let c = g.cbrt() / 3f64.sqrt();
        assert!(!(wp > -(2f64.cbrt()) * c && wp < -c));
        assert!(quartic_eval(g, wp).abs() < 1e-9 * g * g);
    }

    #[test]
    fn large_g_lemma_bracket() {
        let g = 1e8_f64;
        let (_, wp) = critical_frequencies_radicals(g).unwrap();
        assert!(wp > -g.sqrt() && wp < -0.99 * g.sqrt() + g.powf(0.25), "{wp}");
    }

    #[test]
    fn sweep_regimes() {
        let s = sweep(0.01, 0.5, 100).unwrap();
        assert_eq!(s.rows.len(), 100);
        assert_eq!((s.rows[0].v, s.rows[99].v), (0.01, 0.5));
        assert!(s.rows.windows(2).all(|w| w[0].v < w[1].v));
        assert_eq!(s.sign_changes.len(), 1);
        let vs = s.sign_changes[0];
        assert!(vs > 0.110335 && vs < 0.110336, "{vs}");
        for r in &s.rows {
            assert_eq!(r.focusing_count, if r.v < vs { 2 } else { 1 });
        }
        assert!(focusing_indicator(0.05).unwrap() > 0.0);
        assert!(focusing_indicator(0.5).unwrap() < 0.0);
        assert!(sweep(0.5, 0.1, 10).is_err());
        assert!(sweep(0.1, 0.5, 1).is_err());
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(resolvent_root(0.0).is_err());
        assert!(solve_quartic(-1.0).is_err());
        assert!(solve_quartic(f64::NAN).is_err());
    }

    #[test]
    fn extreme_g_stays_finite() {
        for g in [1e-300, 1e-40, 1e40, 1e200] {
            let sol = solve_quartic(g).unwrap();
            assert!(sol.omega_plus.is_finite() && sol.omega_minus.is_finite());
            // the roots differ by O(G^{1/4}) and coincide in floating point for huge G
            assert!(sol.omega_minus <= sol.omega_plus && sol.omega_plus < 0.0);
            assert!(sol.first_discriminant < 0.0);
        }
    }
}
