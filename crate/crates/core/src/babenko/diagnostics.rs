//! Holomorphic reconstruction and the frequency-split diagnostic.

use serde::{Deserialize, Serialize};

use super::WaveProfile;
use crate::spectral::{h_s, hilbert, scaled_e_omega, ComplexField, RealField, Window};
use crate::{Error, Result};

/// `W = HU + iU` and `Q = Hq + iq` with `q = −(γ/2)U² − cU`.
///
/// Both have spectral support on nonpositive frequencies.
pub fn reconstruct(w: &WaveProfile) -> Result<(ComplexField, ComplexField)> {
    let u = &w.u;
    let gamma = w.params.gamma;
    let c = w.c;
    let q = u.map(|v| -0.5 * gamma * v * v - c * v);
    let wf = ComplexField::from_parts(&hilbert(u), u)?;
    let qf = ComplexField::from_parts(&hilbert(&q), &q)?;
    Ok((wf, qf))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencySplitRow {
    pub eps: f64,
    /// `‖U₂‖_{H²}`, `U₂ = U − χU`.
    pub u2_h2: f64,
    /// `‖U₁‖_{𝔈ω}`, `U₁ = χU`.
    pub u1_e: f64,
    /// `‖U₂‖_{H²}/(ε‖U₁‖²_{𝔈ω})`; absent when the denominator vanishes.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencySplitReport {
    pub delta: f64,
    pub rows: Vec<FrequencySplitRow>,
    pub median: f64,
    /// Every ratio lies within a factor 10 of the median.
    pub bounded: bool,
}

/// Splits one field into the carrier band and the rest.
pub fn split_row(u: &RealField, omega: f64, eps: f64, delta: f64) -> Result<FrequencySplitRow> {
    let u1 = u.windowed(Window::Chi, omega, delta)?;
    let u2 = u.sub(&u1)?;
    let u2_h2 = h_s(&u2, 2.0);
    let u1_e = if eps > 0.0 { scaled_e_omega(&u1, omega, eps) } else { 0.0 };
    let denom = eps * u1_e * u1_e;
    let ratio = (denom > 0.0).then(|| u2_h2 / denom);
    Ok(FrequencySplitRow { eps, u2_h2, u1_e, ratio })
}

/// Ratio `‖U₂‖_{H²}/(ε‖U₁‖²_{𝔈ω})` over a ladder of profiles.
pub fn frequency_split_diagnostic(
    profiles: &[WaveProfile],
    delta: f64,
) -> Result<FrequencySplitReport> {
    if profiles.len() < 3 {
        return Err(Error::Insufficient(format!(
            "need at least 3 profiles, got {}",
            profiles.len()
        )));
    }
    let rows = profiles
        .iter()
        .map(|w| split_row(&w.u, w.omega, w.eps, delta))
        .collect::<Result<Vec<_>>>()?;
    let mut ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    if ratios.len() < 3 {
        return Err(Error::Insufficient("fewer than 3 nonzero profiles".into()));
    }
    ratios.sort_by(f64::total_cmp);
    let mid = ratios.len() / 2;
    let median =
        if ratios.len() % 2 == 1 { ratios[mid] } else { 0.5 * (ratios[mid - 1] + ratios[mid]) };
    let bounded = ratios.iter().all(|r| *r <= 10.0 * median && *r >= median / 10.0);
    Ok(FrequencySplitReport { delta, rows, median, bounded })
}
