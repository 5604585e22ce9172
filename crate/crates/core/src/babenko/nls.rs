//! Envelope soliton, seed profiles and the effective cubic coefficient.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::kernel::{cosine_spectrum, spec_to_cosine, Kernel};
use crate::dispersion::{nls_coefficients, CriticalPoint};
use crate::spectral::{PeriodicGrid, RealField};
use crate::{Error, PhysicalParams, Result};

/// `ρ*(β) = sqrt(2a1/(a2|ω|))·sech(sqrt(a1/σ)·β)`.
pub fn nls_profile(p: &PhysicalParams, omega: f64, beta: f64) -> Result<f64> {
    let (a1, a2) = nls_coefficients(p, omega);
    if !(a2 > 0.0) {
        return Err(Error::Defocusing(a2));
    }
    let kappa = (a1 / p.sigma).sqrt();
    Ok((2.0 * a1 / (a2 * omega.abs())).sqrt() / (kappa * beta).cosh())
}

/// L² norm of `(a1 − σ∂²)ρ − a2|ω|ρ³` for `ρ = sign·ρ*` sampled on `grid`.
pub fn nls_residual(p: &PhysicalParams, omega: f64, sign: f64, grid: PeriodicGrid) -> Result<f64> {
    let (a1, a2) = nls_coefficients(p, omega);
    nls_profile(p, omega, 0.0)?;
    let rho = RealField::from_fn(grid, |b| sign * nls_profile(p, omega, b).unwrap_or(0.0));
    let rho_bb = crate::spectral::d_alpha(&crate::spectral::d_alpha(&rho));
    let r = RealField::new(
        grid,
        rho.values()
            .iter()
            .zip(rho_bb.values())
            .map(|(&r, &rbb)| a1 * r - p.sigma * rbb - a2 * omega.abs() * r * r * r)
            .collect(),
    )?;
    Ok(crate::spectral::l2(&r))
}

/// Cubic coefficient of the envelope equation measured from periodic waves.
///
/// A one-wavelength periodic wave with first-harmonic amplitude `a` travels
/// at `c(a) = c* + gap·μa² + O(a⁴)`; `μ > 0` means focusing. Quadratic
/// interactions through the mean and second harmonic contribute to `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveCubic {
    pub mu: f64,
    /// `μ` at the two calibration amplitudes before extrapolation.
    pub mu_coarse: f64,
    pub mu_fine: f64,
}

impl EffectiveCubic {
    pub fn focusing(&self) -> bool {
        self.mu > 0.0
    }

    /// Peak of the envelope soliton per unit `ε`: `sqrt(2/μ)`.
    pub fn peak(&self) -> Result<f64> {
        if !self.focusing() {
            return Err(Error::Defocusing(self.mu));
        }
        Ok((2.0 / self.mu).sqrt())
    }
}

const CAL_N: usize = 32;

fn periodic_speed(p: &PhysicalParams, cp: &CriticalPoint, amp: f64) -> Result<f64> {
    let wavelength = 2.0 * std::f64::consts::PI / cp.omega.abs();
    let grid = PeriodicGrid::new(CAL_N, wavelength)?;
    let k = Kernel::new(grid);
    let half = CAL_N / 2;
    let mut b = vec![0.0; half];
    b[1] = amp;
    let mut c = cp.c_star;
    let mut last = f64::INFINITY;
    for _ in 0..40 {
        let st = k.state(cosine_spectrum(CAL_N, &b));
        Kernel::check_jacobian(&st)?;
        let r = spec_to_cosine(&k.residual(p, c, &st));
        let rn = r.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if rn < 1e-15 * amp || (rn >= last && rn < 1e-13 * amp) {
            return Ok(c);
        }
        last = rn;
        // column 1 carries the velocity, the mode-1 amplitude is held fixed
        let mut m = DMatrix::zeros(half, half);
        let mut e = vec![0.0; half];
        for j in 0..half {
            let col = if j == 1 {
                let u = st.spec.clone();
                let xi = |idx: usize| grid.wavenumber(idx).abs();
                let spec: Vec<_> = u
                    .iter()
                    .enumerate()
                    .map(|(idx, &z)| z * (p.gamma - 2.0 * c * xi(idx)))
                    .collect();
                spec_to_cosine(&spec)
            } else {
                e[j] = 1.0;
                let out = spec_to_cosine(&k.frechet(p, c, &st, &cosine_spectrum(CAL_N, &e)));
                e[j] = 0.0;
                out
            };
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        let d = crate::linalg::dense_solve(m, &rhs)?;
        for j in 0..half {
            if j == 1 {
                c += d[j];
            } else {
                b[j] += d[j];
            }
        }
    }
    Err(Error::NewtonDivergence {
        reason: "periodic calibration did not converge".into(),
        trace: vec![last],
    })
}

/// Measures `μ` at amplitudes `a` and `a/2` and extrapolates the `O(a²)`
/// correction away.
pub fn effective_cubic(p: &PhysicalParams, cp: &CriticalPoint) -> Result<EffectiveCubic> {
    let gap = cp.branch.gap_direction();
    let a = 0.01 / cp.omega.abs().max(1e-3);
    let mu_at = |amp: f64| -> Result<f64> {
        let c = periodic_speed(p, cp, amp)?;
        Ok(gap * (c - cp.c_star) / (amp * amp))
    };
    let coarse = mu_at(a)?;
    let fine = mu_at(0.5 * a)?;
    Ok(EffectiveCubic { mu: (4.0 * fine - coarse) / 3.0, mu_coarse: coarse, mu_fine: fine })
}

/// Peak amplitude per unit `ε` of the published seed `A·ε·ρ*(εα)cos(ωα)`.
pub fn soliton_amplitude(p: &PhysicalParams, omega: f64, a: f64) -> Result<f64> {
    Ok(a * nls_profile(p, omega, 0.0)?)
}

/// `U₀(α) = sign·peak·ε·sech(κεα)·cos(ωα)` with `κ = sqrt(a1/σ)`.
///
/// With `peak = A·ρ*(0)` this is the published seed `sign·A·ε·ρ*(εα)cos(ωα)`;
/// with `peak = sqrt(2/μ)` it is the soliton of the calibrated envelope
/// equation.
pub fn seed_profile(
    grid: PeriodicGrid,
    p: &PhysicalParams,
    cp: &CriticalPoint,
    eps: f64,
    sign: f64,
    peak: f64,
) -> RealField {
    let kappa = (cp.a1 / p.sigma).sqrt();
    let omega = cp.omega;
    let raw = RealField::from_fn(grid, |x| {
        sign * peak * eps * (omega * x).cos() / (kappa * eps * x).cosh()
    });
    let a = crate::spectral::to_cosine(&raw);
    symmetrize(&crate::spectral::from_cosine(grid, &a).expect("length matches"))
}

/// Averages `f(α)` and `f(−α)` so the field is even to the last bit.
pub(crate) fn symmetrize(f: &RealField) -> RealField {
    let g = *f.grid();
    let v = f.values();
    let out = (0..g.n).map(|j| 0.5 * (v[j] + v[g.mirror(j)])).collect();
    RealField::from_vec_unchecked(g, out)
}
