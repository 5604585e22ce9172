//! Babenko equation for `U = Im W`.
//!
//! ```text
//! (g + cγ − c²|D|)U − σ(U_α/√J)_α + σ|D|((1 + |D|U)/√J)
//!   + γ²U²/2 + gU|D|U + (g/2)|D|U² − (γ²/2)U|D|U² + (γ²/2)U²|D|U + (γ²/6)|D|U³ = 0
//! ```
//!
//! with `J = (1 + |D|U)² + U_α²`. All nonlinear terms are formed on a grid
//! padded by two and truncated back (see [`kernel`]), so quadratic and cubic
//! terms carry no aliasing error.

pub(crate) mod diagnostics;
pub(crate) mod kernel;
mod nls;
mod solver;

use rustfft::num_complex::Complex64;

use crate::spectral::{PeriodicGrid, RealField};
use crate::{Error, PhysicalParams, Result};
use kernel::Kernel;

pub use diagnostics::{
    frequency_split_diagnostic, reconstruct, split_row, FrequencySplitReport, FrequencySplitRow,
};
pub use nls::{
    effective_cubic, nls_profile, nls_residual, seed_profile, soliton_amplitude, EffectiveCubic,
};
pub use solver::{
    choose_grid, nls_error, solve, solve_ladder, JacobianMode, LinearSolver, SeedKind,
    SolverConfig, WaveProfile,
};

fn kernel_state(u: &RealField) -> (Kernel, kernel::State) {
    let k = Kernel::new(*u.grid());
    let st = k.state(u.spectrum().to_vec());
    (k, st)
}

fn field(grid: PeriodicGrid, spec: Vec<Complex64>) -> RealField {
    // spectra built by the kernel are Hermitian with an empty Nyquist slot
    let mut s = spec;
    crate::spectral::inverse(&mut s);
    RealField::from_vec_unchecked(grid, s.into_iter().map(|z| z.re).collect())
}

/// `J = (1 + |D|U)² + U_α²` on the grid of `U`.
pub fn jacobian_j(u: &RealField) -> Result<RealField> {
    let du = crate::spectral::abs_d(u);
    let ua = crate::spectral::d_alpha(u);
    let j = du.zip_with(&ua, |d, a| (1.0 + d) * (1.0 + d) + a * a)?;
    let min = j.values().iter().copied().fold(f64::INFINITY, f64::min);
    if !(min > kernel::JACOBIAN_FLOOR) {
        return Err(Error::NonPositiveJacobian(min));
    }
    Ok(j)
}

/// `−σ(U_α/√J)_α + σ|D|((1 + |D|U)/√J)`.
pub fn capillary_terms(u: &RealField, sigma: f64) -> Result<RealField> {
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    Ok(field(*u.grid(), k.capillary(sigma, &st)))
}

/// Which small-amplitude expansion of the capillary terms to form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapillaryExpansion {
    /// `−σU_αα − (σ/2)|D|(|D|U)² + (σ/2)∂(U_α³)`.
    Quoted,
    /// `Quoted` plus `σ|D|(|D|U·U_α²) − σ∂((|D|U)²U_α)`, the cubic part of
    /// the gradient of `(σ/2)∫(|D|U)²U_α²`, which `Quoted` omits.
    Complete,
}

/// Quadratic and cubic part of [`capillary_terms`].
///
/// `Complete` leaves an `O(‖U‖⁴)` remainder. `Quoted` leaves an `O(‖U‖³)`
/// remainder whenever `|D|U·U_α² ≠ 0`.
pub fn capillary_expansion(
    u: &RealField,
    sigma: f64,
    form: CapillaryExpansion,
) -> Result<RealField> {
    use crate::spectral::{abs_d, d_alpha, dealiased_product};
    let ua = d_alpha(u);
    let uaa = d_alpha(&ua);
    let du = abs_d(u);
    let du_sq = dealiased_product(&[&du, &du])?;
    let ua_cubed = dealiased_product(&[&ua, &ua, &ua])?;
    let mut out = uaa
        .scale(-sigma)
        .sub(&abs_d(&du_sq).scale(0.5 * sigma))?
        .add(&d_alpha(&ua_cubed).scale(0.5 * sigma))?;
    if form == CapillaryExpansion::Complete {
        let a = dealiased_product(&[&du, &ua, &ua])?;
        let b = dealiased_product(&[&du, &du, &ua])?;
        out = out.add(&abs_d(&a).scale(sigma))?.sub(&d_alpha(&b).scale(sigma))?;
    }
    Ok(out)
}

/// Left-hand side of the Babenko equation at velocity `c`.
///
/// The nondimensional equation is the case `g = 1`, `σ = V`, `γ = 1`.
pub fn babenko_residual(u: &RealField, c: f64, p: &PhysicalParams) -> Result<RealField> {
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    Ok(field(*u.grid(), k.residual(p, c, &st)))
}

/// Directional derivative of [`babenko_residual`] at `u` along `v`.
pub fn babenko_frechet(
    u: &RealField,
    c: f64,
    p: &PhysicalParams,
    v: &RealField,
) -> Result<RealField> {
    if u.grid() != v.grid() {
        return Err(Error::GridMismatch("direction on a different grid".into()));
    }
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    Ok(field(*u.grid(), k.frechet(p, c, &st, v.spectrum())))
}

/// Nodal matrix of the linearisation at `u` (column `j` = response to the
/// `j`-th unit nodal vector). Intended for diagnostics on small grids.
pub fn frechet_matrix(
    u: &RealField,
    c: f64,
    p: &PhysicalParams,
) -> Result<nalgebra::DMatrix<f64>> {
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    let n = u.grid().n;
    let mut col_err = None;
    let m = crate::linalg::assemble(n, |e| {
        let ef = RealField::from_vec_unchecked(*u.grid(), e.to_vec());
        let spec = k.frechet(p, c, &st, ef.spectrum());
        let out = k.base_values(spec);
        if out.iter().any(|v| !v.is_finite()) {
            col_err = Some(Error::Domain("non-finite linearisation".into()));
        }
        out
    });
    match col_err {
        Some(e) => Err(e),
        None => Ok(m),
    }
}

/// Total energy with `Im Q = −(γ/2)U² − cU` eliminated:
///
/// `ℰ = ½∫ q|D|q + gU²(1+|D|U) + γ(|D|q)U² + (γ²/3)U³(1+|D|U) + 2σ(√J − 1 − |D|U)`.
pub fn energy(u: &RealField, c: f64, p: &PhysicalParams) -> Result<f64> {
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    Ok(k.functionals(p, c, &st).0)
}

/// Horizontal momentum `𝒫 = −∫ (|D|q)U + (γ/2)U²(1+|D|U)`.
pub fn momentum(u: &RealField, c: f64, p: &PhysicalParams) -> Result<f64> {
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    Ok(k.functionals(p, c, &st).1)
}

/// `ℰ − c𝒫`, whose gradient is the Babenko residual.
pub fn lagrangian(u: &RealField, c: f64, p: &PhysicalParams) -> Result<f64> {
    let (k, st) = kernel_state(u);
    Kernel::check_jacobian(&st)?;
    let (e, m) = k.functionals(p, c, &st);
    Ok(e - c * m)
}

#[cfg(test)]
mod tests;
