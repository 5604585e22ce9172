use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `n` equispaced nodes `α_j = −L/2 + jL/n` on a period of length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicGrid {
    pub n: usize,
    pub length: f64,
}

impl PeriodicGrid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(Error::InvalidParams(format!(
                "grid size must be a power of two >= 16, got {n}"
            )));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidParams(format!("period must be positive, got {length}")));
        }
        Ok(Self { n, length })
    }

    /// Same period, `n` replaced; used for padded and refined grids.
    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -0.5 * self.length + j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    pub fn nyquist(&self) -> f64 {
        PI * self.n as f64 / self.length
    }

    /// Fundamental wavenumber `2π/L`.
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Signed integer index of DFT slot `k`; the Nyquist slot maps to `n/2`.
    pub fn mode_index(&self, k: usize) -> i64 {
        if k <= self.n / 2 { k as i64 } else { k as i64 - self.n as i64 }
    }

    /// Angular frequency `ξ_k` of slot `k`.
    pub fn wavenumber(&self, k: usize) -> f64 {
        self.mode_index(k) as f64 * self.dk()
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.wavenumber(k)).collect()
    }

    pub fn is_nyquist(&self, k: usize) -> bool {
        k == self.n / 2
    }

    /// Index of the node mirrored through `α = 0`.
    pub fn mirror(&self, j: usize) -> usize {
        (self.n - j) % self.n
    }
}
