//! Physical parameters and the nondimensional reduction.
//!
//! Rescaling `α̃ = γ²α/g`, `t̃ = γt`, `W̃ = γ²W/g`, `Q̃ = γ³Q/g²`, `c̃ = γc/g`
//! turns the Babenko equation into one with `g = 1`, `γ = 1` and surface
//! tension `V = σγ⁴/g³`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Gravity `g`, surface tension `sigma` and constant vorticity `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub g: f64,
    pub sigma: f64,
    pub gamma: f64,
}

impl PhysicalParams {
    pub fn new(g: f64, sigma: f64, gamma: f64) -> Result<Self> {
        if !(g.is_finite() && sigma.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite parameter (g={g}, sigma={sigma}, gamma={gamma})"
            )));
        }
        if g < 0.0 || sigma < 0.0 {
            return Err(Error::InvalidParams(format!(
                "g and sigma must be nonnegative (g={g}, sigma={sigma})"
            )));
        }
        if g == 0.0 && sigma == 0.0 {
            return Err(Error::InvalidParams("g and sigma cannot both vanish".into()));
        }
        Ok(Self { g, sigma, gamma })
    }

    /// The nondimensional problem `(g, σ, γ) = (1, V, 1)`.
    pub fn nondimensional(v: f64) -> Result<Self> {
        if !(v > 0.0) {
            return Err(Error::InvalidParams(format!("V must be positive, got {v}")));
        }
        Self::new(1.0, v, 1.0)
    }

    /// `g + cγ`, positive in the admissible velocity range.
    pub fn sign_quantity(&self, c: f64) -> f64 {
        self.g + c * self.gamma
    }

    /// Sign condition `g + cγ > 0` together with coercivity `c⁴ < 4σ(g + cγ)`.
    pub fn is_admissible_velocity(&self, c: f64) -> bool {
        let s = self.sign_quantity(c);
        s > 0.0 && c.powi(4) < 4.0 * self.sigma * s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NondimParams {
    /// `σγ⁴/g³`
    pub v: f64,
    /// `1/V`
    pub g_recip: f64,
}

impl NondimParams {
    pub fn from_v(v: f64) -> Result<Self> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParams(format!("V must be positive and finite, got {v}")));
        }
        Ok(Self { v, g_recip: 1.0 / v })
    }

    pub fn from_g(g_recip: f64) -> Result<Self> {
        if !(g_recip > 0.0 && g_recip.is_finite()) {
            return Err(Error::InvalidParams(format!("G must be positive and finite, got {g_recip}")));
        }
        Ok(Self { v: 1.0 / g_recip, g_recip })
    }
}

/// Multiplicative factors taking dimensional quantities to nondimensional ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleFactors {
    /// `α̃ = alpha_scale · α`
    pub alpha_scale: f64,
    pub t_scale: f64,
    pub w_scale: f64,
    pub q_scale: f64,
    /// `c̃ = c_scale · c`
    pub c_scale: f64,
}

impl ScaleFactors {
    pub fn velocity_to_nondim(&self, c: f64) -> f64 {
        c * self.c_scale
    }

    pub fn velocity_from_nondim(&self, c_tilde: f64) -> f64 {
        c_tilde / self.c_scale
    }

    /// Frequencies scale inversely to lengths.
    pub fn frequency_to_nondim(&self, k: f64) -> f64 {
        k / self.alpha_scale
    }

    pub fn frequency_from_nondim(&self, k_tilde: f64) -> f64 {
        k_tilde * self.alpha_scale
    }
}

pub fn nondimensionalize(p: &PhysicalParams) -> Result<(NondimParams, ScaleFactors)> {
    if p.g == 0.0 {
        return Err(Error::UseDimensionalPipeline("g = 0".into()));
    }
    if p.gamma == 0.0 {
        return Err(Error::UseDimensionalPipeline("gamma = 0".into()));
    }
    if !(p.sigma > 0.0) {
        return Err(Error::InvalidParams("sigma must be positive".into()));
    }
    let (g, s, gm) = (p.g, p.sigma, p.gamma);
    let v = s * gm.powi(4) / g.powi(3);
    let scales = ScaleFactors {
        alpha_scale: gm * gm / g,
        t_scale: gm,
        w_scale: gm * gm / g,
        q_scale: gm.powi(3) / (g * g),
        c_scale: gm / g,
    };
    Ok((NondimParams::from_v(v)?, scales))
}
