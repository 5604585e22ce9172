//! Linear dispersion analysis.
//!
//! A linear wave `e^{ik(α + ct)}` with `k < 0` exists iff
//! `σk² + c²k + (g + cγ) = 0`. Solving for `c` gives the two branches
//! `c±(k)`; `c+` is nonpositive with a unique maximum `c1` and `c−` is
//! nonnegative with a unique minimum `c2`. The critical velocities are the
//! roots of `c⁴ = 4σ(g + cγ)` with `g + cγ > 0`.

use serde::{Deserialize, Serialize};

use crate::{Error, PhysicalParams, Result};

/// Relative tolerance used when validating critical points.
pub const CRITICAL_TOL: f64 = 1e-10;

/// Which dispersion branch a critical point extremises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Maximum of `c+(k)`; velocity `c1 < 0` when `g > 0`.
    Plus,
    /// Minimum of `c−(k)`; velocity `c2 > 0`.
    Minus,
}

impl Branch {
    /// Sign of `c − c*` that moves the velocity into the spectral gap:
    /// solitary waves travel at `c1 + ε²` or `c2 − ε²`.
    pub fn gap_direction(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Branch::Plus => "c1",
            Branch::Minus => "c2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub branch: Branch,
    pub c_star: f64,
    pub omega: f64,
    pub focusing: bool,
    pub a1: f64,
    pub a2: f64,
}

/// `(c+(k), c−(k))` for `k < 0`.
pub fn wave_speed_branches(p: &PhysicalParams, k: f64) -> Result<(f64, f64)> {
    if !(k < 0.0) {
        return Err(Error::NonNegativeFrequency(k));
    }
    let disc = p.gamma * p.gamma - 4.0 * k * (p.g + p.sigma * k * k);
    // roots of k c² + γ c + (g + σk²), without cancellation
    let root = disc.max(0.0).sqrt();
    let q = -0.5 * (p.gamma + root.copysign(p.gamma));
    let tension = p.g + p.sigma * k * k;
    let (far, near) = (q / k, if q == 0.0 { 0.0 } else { tension / q });
    // k < 0, so c+ = (−γ + √disc)/2k is the smaller root
    Ok((far.min(near), far.max(near)))
}

fn quartic(p: &PhysicalParams, c: f64) -> f64 {
    c.powi(4) - 4.0 * p.sigma * p.gamma * c - 4.0 * p.sigma * p.g
}

/// Safeguarded Newton on a bracket `[a, b]` with `f(a)·f(b) ≤ 0`.
fn bracketed_newton(p: &PhysicalParams, mut a: f64, mut b: f64) -> f64 {
    let f = |c: f64| quartic(p, c);
    let df = |c: f64| 4.0 * c.powi(3) - 4.0 * p.sigma * p.gamma;
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let d = df(x);
        let mut next = if d != 0.0 { x - fx / d } else { f64::NAN };
        if !(next > a.min(b) && next < a.max(b)) {
            next = 0.5 * (a + b);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            return next;
        }
        x = next;
    }
    x
}

/// Velocities at which a dispersion branch is critical.
///
/// For `g > 0` returns `vec![c1, c2]` with `c1 < 0 < c2`. For `g = 0` the
/// only admissible root is `(4σγ)^{1/3}`.
pub fn critical_velocities(p: &PhysicalParams) -> Result<Vec<f64>> {
    if !(p.sigma > 0.0) {
        return Err(Error::InvalidParams("critical velocities need sigma > 0".into()));
    }
    if p.g == 0.0 {
        if p.gamma == 0.0 {
            return Err(Error::InvalidParams("g = 0 requires gamma != 0".into()));
        }
        return Ok(vec![(4.0 * p.sigma * p.gamma).cbrt()]);
    }
    // f(c) = c⁴ − 4σγc − 4σg decreases on (−∞, (σγ)^{1/3}) and increases after;
    // f(0) < 0, so one root lies on each side of 0.
    let turn = (p.sigma * p.gamma).cbrt();
    let scale = |c: f64| c.abs().max(1.0);
    let mut lo = turn.min(0.0) - 1.0;
    while quartic(p, lo) <= 0.0 {
        lo -= 2.0 * scale(lo);
    }
    let mut hi = turn.max(0.0) + 1.0;
    while quartic(p, hi) <= 0.0 {
        hi += 2.0 * scale(hi);
    }
    let c1 = bracketed_newton(p, lo, turn.min(0.0));
    let c2 = bracketed_newton(p, turn.max(0.0), hi);
    Ok(vec![c1, c2])
}

/// `ω = −c*²/(2σ)`, the double root of `σk² + c*²k + (g + c*γ)`.
pub fn critical_frequency(p: &PhysicalParams, c_star: f64) -> f64 {
    -c_star * c_star / (2.0 * p.sigma)
}

/// `ℓ(ξ) = g + c*γ − c*²|ξ| + σξ²`, the symbol of the linearised Babenko operator.
pub fn symbol_l(p: &PhysicalParams, c: f64, xi: f64) -> f64 {
    p.g + c * p.gamma - c * c * xi.abs() + p.sigma * xi * xi
}

/// `ℓ̃(ξ) = g + c*γ − c*²ξ + σξ²`, without the absolute value.
pub fn symbol_ell_tilde(p: &PhysicalParams, c: f64, xi: f64) -> f64 {
    p.g + c * p.gamma - c * c * xi + p.sigma * xi * xi
}

pub fn symbol_ell_tilde_prime(p: &PhysicalParams, c: f64, xi: f64) -> f64 {
    -c * c + 2.0 * p.sigma * xi
}

pub fn symbol_ell_tilde_second(p: &PhysicalParams) -> f64 {
    2.0 * p.sigma
}

/// Linear and cubic coefficients of the reduced NLS equation.
///
/// `a1 = sqrt(γ² − 4ω(g + σω²))`, `a2 = (3σ/2)|ω|³ − γ²`.
pub fn nls_coefficients(p: &PhysicalParams, omega: f64) -> (f64, f64) {
    let a1 = (p.gamma * p.gamma - 4.0 * omega * (p.g + p.sigma * omega * omega)).sqrt();
    let a2 = 1.5 * p.sigma * omega.abs().powi(3) - p.gamma * p.gamma;
    (a1, a2)
}

/// All critical points, ordered by velocity.
pub fn critical_points(p: &PhysicalParams) -> Result<Vec<CriticalPoint>> {
    let cs = critical_velocities(p)?;
    Ok(cs
        .into_iter()
        .map(|c_star| {
            let branch = if c_star < 0.0 { Branch::Plus } else { Branch::Minus };
            let omega = critical_frequency(p, c_star);
            let (a1, a2) = nls_coefficients(p, omega);
            CriticalPoint { branch, c_star, omega, focusing: a2 > 0.0, a1, a2 }
        })
        .collect())
}

/// The critical point extremising the requested branch.
pub fn critical_point(p: &PhysicalParams, branch: Branch) -> Result<CriticalPoint> {
    critical_points(p)?
        .into_iter()
        .find(|cp| cp.branch == branch)
        .ok_or_else(|| {
            Error::InvalidParams(format!("no critical point on branch {}", branch.label()))
        })
}

impl CriticalPoint {
    /// Residual of `c⁴ = 4σ(g + cγ)` relative to the size of its terms.
    ///
    /// `g + cγ` can cancel (small `g`, `cγ < 0`), so the scale is
    /// `c⁴ + 4σ(|g| + |cγ|)` rather than either side.
    pub fn quartic_residual(&self, p: &PhysicalParams) -> f64 {
        let c = self.c_star;
        let lhs = c.powi(4);
        let rhs = 4.0 * p.sigma * p.sign_quantity(c);
        let scale = lhs + 4.0 * p.sigma * (p.g.abs() + (c * p.gamma).abs());
        (lhs - rhs).abs() / scale
    }

    /// Checks the stored invariants at tolerance [`CRITICAL_TOL`].
    pub fn validate(&self, p: &PhysicalParams) -> Result<()> {
        let mut bad = Vec::new();
        if !(self.omega < 0.0) {
            bad.push("omega >= 0");
        }
        if !(self.a1 > 0.0) {
            bad.push("a1 <= 0");
        }
        if self.focusing != (self.a2 > 0.0) {
            bad.push("focusing verdict");
        }
        if !(p.sign_quantity(self.c_star) > 0.0) {
            bad.push("sign condition");
        }
        if self.quartic_residual(p) > CRITICAL_TOL {
            bad.push("quartic residual");
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid critical point: {}", bad.join(", "))))
        }
    }
}
