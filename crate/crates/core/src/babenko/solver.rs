//! Newton continuation for even solitary waves near a critical velocity.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::kernel::{cosine_spectrum, spec_to_cosine, Kernel};
use super::nls::{effective_cubic, seed_profile, soliton_amplitude, symmetrize, EffectiveCubic};
use crate::dispersion::{critical_point, symbol_l, Branch, CriticalPoint};
use crate::linalg::{dense_solve, gmres, GmresConfig};
use crate::spectral::{h_s, PeriodicGrid, RealField};
use crate::{Error, PhysicalParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobianMode {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearSolver {
    /// Dense LU up to [`SolverConfig::dense_max_modes`] cosine modes, GMRES above.
    Auto,
    Dense,
    Gmres,
}

/// Which leading-order profile started the Newton iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SeedKind {
    /// `sqrt(2/μ)·ε·sech(κεα)cos(ωα)` with `μ` from periodic waves.
    Calibrated,
    /// `A·ε·ρ*(εα)cos(ωα)` with the closed-form `ρ*`.
    Published { a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Target for the continuous L² norm of the residual.
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Intermediate `ε` values for continuation when direct seeding fails.
    /// Empty means a geometric ladder from `ε/2` up to `ε`.
    pub continuation_steps: Vec<f64>,
    pub jacobian_mode: JacobianMode,
    pub linear_solver: LinearSolver,
    pub dense_max_modes: usize,
    /// Grid override `(n, L)`; chosen from `ε` when absent.
    pub grid: Option<(usize, f64)>,
    pub max_n: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            newton_tol: 1e-11,
            max_iter: 40,
            continuation_steps: Vec::new(),
            jacobian_mode: JacobianMode::Analytic,
            linear_solver: LinearSolver::Auto,
            dense_max_modes: 512,
            grid: None,
            max_n: 4096,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.newton_tol > 0.0) {
            return Err(Error::InvalidParams("newton_tol must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParams("max_iter must be positive".into()));
        }
        if self.continuation_steps.iter().any(|e| !(*e > 0.0)) {
            return Err(Error::InvalidParams("continuation steps must be positive".into()));
        }
        Ok(())
    }
}

/// A converged even solitary wave.
#[derive(Debug, Clone)]
pub struct WaveProfile {
    pub params: PhysicalParams,
    pub branch: Branch,
    pub c_star: f64,
    pub c: f64,
    pub eps: f64,
    pub omega: f64,
    /// `U = Im W`.
    pub u: RealField,
    /// The leading-order profile the remainder is measured against.
    pub seed: RealField,
    pub residual_norm: f64,
    /// `+1` or `−1`.
    pub sign: f64,
    /// Seed peak per unit `ε`.
    pub seed_amplitude: f64,
    pub seed_kind: SeedKind,
    pub cubic: EffectiveCubic,
    pub iterations: usize,
    pub continuation_used: bool,
    pub trace: Vec<f64>,
}

impl WaveProfile {
    pub fn sup_over_eps(&self) -> f64 {
        self.u.max_abs() / self.eps
    }

    pub fn jacobian_min(&self) -> Result<f64> {
        let j = super::jacobian_j(&self.u)?;
        Ok(j.values().iter().copied().fold(f64::INFINITY, f64::min))
    }
}

/// `‖U − seed‖_{H¹}/ε`.
pub fn nls_error(w: &WaveProfile) -> Result<f64> {
    Ok(h_s(&w.u.sub(&w.seed)?, 1.0) / w.eps)
}

/// Periodic box of 28 envelope widths (whole carrier wavelengths) and a
/// power-of-two grid resolving the harmonics of the seed amplitude.
pub fn choose_grid(
    p: &PhysicalParams,
    cp: &CriticalPoint,
    eps: f64,
    peak: f64,
    max_n: usize,
) -> Result<PeriodicGrid> {
    let kappa = (cp.a1 / p.sigma).sqrt();
    let wavelength = 2.0 * PI / cp.omega.abs();
    let waves = (28.0 / (eps * kappa) / wavelength).ceil().max(16.0);
    let length = waves * wavelength;
    // harmonics decay like (a|ω|)^m; keep those above 1e-13
    let steep = (peak * eps * cp.omega.abs()).clamp(1e-3, 0.9);
    let harmonics = (13.0 / -steep.log10()).ceil().max(4.0);
    let ppw = (2.0 * harmonics + 2.0).max(16.0);
    let n = ((waves * ppw) as usize).next_power_of_two().clamp(64, max_n.max(64));
    PeriodicGrid::new(n, length)
}

struct Problem<'a> {
    p: &'a PhysicalParams,
    c: f64,
    kernel: Kernel,
    cfg: &'a SolverConfig,
    /// `ℓ_c(ξ_k)` for each cosine mode.
    precond: Vec<f64>,
}

impl<'a> Problem<'a> {
    fn new(p: &'a PhysicalParams, c: f64, grid: PeriodicGrid, cfg: &'a SolverConfig) -> Self {
        let precond = (0..grid.n / 2)
            .map(|k| {
                let l = symbol_l(p, c, grid.wavenumber(k));
                if l.abs() < 1e-14 { 1.0 } else { l }
            })
            .collect();
        Self { p, c, kernel: Kernel::new(grid), cfg, precond }
    }

    fn residual(&self, x: &[f64]) -> Result<(Vec<f64>, f64, super::kernel::State)> {
        let n = self.kernel.grid.n;
        let st = self.kernel.state(cosine_spectrum(n, x));
        Kernel::check_jacobian(&st)?;
        let spec = self.kernel.residual(self.p, self.c, &st);
        let vals = self.kernel.base_values(spec.clone());
        let norm = (self.kernel.grid.spacing() * vals.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if !norm.is_finite() {
            return Err(Error::Domain("non-finite residual".into()));
        }
        Ok((spec_to_cosine(&spec), norm, st))
    }

    fn apply(&self, x: &[f64], st: &super::kernel::State, v: &[f64]) -> Vec<f64> {
        let n = self.kernel.grid.n;
        match self.cfg.jacobian_mode {
            JacobianMode::Analytic => {
                spec_to_cosine(&self.kernel.frechet(self.p, self.c, st, &cosine_spectrum(n, v)))
            }
            JacobianMode::FiniteDifference => {
                let vn = v.iter().map(|t| t * t).sum::<f64>().sqrt();
                if vn == 0.0 {
                    return vec![0.0; v.len()];
                }
                let xn = x.iter().map(|t| t * t).sum::<f64>().sqrt();
                let h = 1e-6 * xn.max(1e-3) / vn;
                let eval = |s: f64| {
                    let y: Vec<f64> = x.iter().zip(v).map(|(a, b)| a + s * b).collect();
                    let st = self.kernel.state(cosine_spectrum(n, &y));
                    spec_to_cosine(&self.kernel.residual(self.p, self.c, &st))
                };
                let (fp, fm) = (eval(h), eval(-h));
                fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect()
            }
        }
    }

    fn newton_step(&self, x: &[f64], st: &super::kernel::State, r: &[f64]) -> Result<Vec<f64>> {
        let modes = x.len();
        let rhs: Vec<f64> = r.iter().map(|v| -v).collect();
        let dense = match self.cfg.linear_solver {
            LinearSolver::Dense => true,
            LinearSolver::Gmres => false,
            LinearSolver::Auto => modes <= self.cfg.dense_max_modes,
        };
        if dense {
            let m = crate::linalg::assemble(modes, |v| self.apply(x, st, v));
            return dense_solve(m, &rhs);
        }
        let pc = |v: &[f64]| -> Vec<f64> { v.iter().zip(&self.precond).map(|(a, l)| a / l).collect() };
        let out = gmres(
            |v| self.apply(x, st, v),
            pc,
            &rhs,
            GmresConfig { restart: 150, max_iter: 1500, rel_tol: 1e-10 },
        );
        if !out.converged && out.rel_residual > 1e-4 {
            return Err(Error::LinearSolve(format!(
                "GMRES stalled at relative residual {:.3e} after {} iterations",
                out.rel_residual, out.iterations
            )));
        }
        Ok(out.x)
    }

    /// Damped Newton from `x`. Returns the solution, final norm and trace.
    fn run(&self, mut x: Vec<f64>, trace: &mut Vec<f64>) -> Result<(Vec<f64>, f64)> {
        let (mut r, mut norm, mut st) = self.residual(&x)?;
        trace.push(norm);
        for _ in 0..self.cfg.max_iter {
            if norm <= self.cfg.newton_tol {
                return Ok((x, norm));
            }
            let dx = self.newton_step(&x, &st, &r)?;
            let mut lambda = 1.0;
            let mut accepted = None;
            for _ in 0..12 {
                let y: Vec<f64> = x.iter().zip(&dx).map(|(a, d)| a + lambda * d).collect();
                if let Ok((ry, ny, sy)) = self.residual(&y) {
                    if ny < (1.0 - 1e-4 * lambda) * norm {
                        accepted = Some((y, ry, ny, sy));
                        break;
                    }
                }
                lambda *= 0.5;
            }
            match accepted {
                Some((y, ry, ny, sy)) => {
                    x = y;
                    r = ry;
                    norm = ny;
                    st = sy;
                    trace.push(norm);
                }
                None if norm <= 100.0 * self.cfg.newton_tol => return Ok((x, norm)),
                None => {
                    return Err(Error::NewtonDivergence {
                        reason: "line search found no decrease".into(),
                        trace: trace.clone(),
                    })
                }
            }
        }
        if norm <= self.cfg.newton_tol {
            return Ok((x, norm));
        }
        Err(Error::NewtonDivergence {
            reason: format!("no convergence in {} iterations", self.cfg.max_iter),
            trace: trace.clone(),
        })
    }
}

fn to_cosine(f: &RealField) -> Vec<f64> {
    crate::spectral::to_cosine(f)
}

/// Solves for the even solitary wave on `branch` at `c = c* + gap·ε²`.
///
/// Seeds tried in order: the calibrated envelope soliton, then the published
/// profile with `A = 1` and `A = 2` when the closed-form coefficient is
/// focusing, then continuation in `ε` from `ε/2` on the target grid.
pub fn solve(
    p: &PhysicalParams,
    branch: Branch,
    eps: f64,
    sign: f64,
    cfg: &SolverConfig,
) -> Result<WaveProfile> {
    cfg.validate()?;
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::InvalidParams(format!("eps must lie in (0, 0.1], got {eps}")));
    }
    if sign != 1.0 && sign != -1.0 {
        return Err(Error::InvalidParams(format!("sign must be +1 or -1, got {sign}")));
    }
    let cp = critical_point(p, branch)?;
    let cubic = effective_cubic(p, &cp)?;
    let peak = cubic.peak()?;
    let c = cp.c_star + branch.gap_direction() * eps * eps;
    if !p.is_admissible_velocity(c) {
        return Err(Error::InvalidParams(format!("velocity {c} violates sign/coercivity")));
    }
    let grid = match cfg.grid {
        Some((n, l)) => PeriodicGrid::new(n, l)?,
        None => choose_grid(p, &cp, eps, peak, cfg.max_n)?,
    };
    let prob = Problem::new(p, c, grid, cfg);
    let calibrated = seed_profile(grid, p, &cp, eps, sign, peak);

    let mut seeds = vec![(SeedKind::Calibrated, peak)];
    if cp.focusing {
        for a in [1.0, 2.0] {
            seeds.push((SeedKind::Published { a }, soliton_amplitude(p, cp.omega, a)?));
        }
    }
    let finish = |x: Vec<f64>, norm: f64, kind: SeedKind, amp: f64, trace: Vec<f64>, cont: bool| {
        let u = symmetrize(&crate::spectral::from_cosine(grid, &x)?);
        let seed = if kind == SeedKind::Calibrated {
            calibrated.clone()
        } else {
            seed_profile(grid, p, &cp, eps, sign, amp)
        };
        // a collapse onto U = 0 also has zero residual
        if u.max_abs() < 0.1 * amp * eps {
            return Err(Error::NewtonDivergence {
                reason: "converged to the trivial solution".into(),
                trace: trace.clone(),
            });
        }
        Ok(WaveProfile {
            params: *p,
            branch,
            c_star: cp.c_star,
            c,
            eps,
            omega: cp.omega,
            u,
            seed,
            residual_norm: norm,
            sign,
            seed_amplitude: amp,
            seed_kind: kind,
            cubic,
            iterations: trace.len() - 1,
            continuation_used: cont,
            trace,
        })
    };

    let mut failures = Vec::new();
    for (kind, amp) in seeds {
        let s0 = seed_profile(grid, p, &cp, eps, sign, amp);
        let mut trace = Vec::new();
        match prob.run(to_cosine(&s0), &mut trace) {
            Ok((x, norm)) => match finish(x, norm, kind, amp, trace, false) {
                Ok(w) => return Ok(w),
                Err(e) => failures.push(e),
            },
            Err(e) => failures.push(e),
        }
    }

    // continuation on the target grid and velocity ladder
    let steps: Vec<f64> = if cfg.continuation_steps.is_empty() {
        (0..=6).map(|i| eps * 0.5f64.powf(1.0 - i as f64 / 6.0)).collect()
    } else {
        let mut s: Vec<f64> = cfg.continuation_steps.iter().copied().filter(|e| *e < eps).collect();
        s.sort_by(f64::total_cmp);
        s.push(eps);
        s
    };
    let mut trace = Vec::new();
    let mut x: Option<Vec<f64>> = None;
    let mut prev_seed: Option<RealField> = None;
    for &e in &steps {
        let ce = cp.c_star + branch.gap_direction() * e * e;
        let pe = Problem::new(p, ce, grid, cfg);
        let seed_e = seed_profile(grid, p, &cp, e, sign, peak);
        let start = match (&x, &prev_seed) {
            (Some(x0), Some(s_old)) => {
                // predictor: previous solution shifted by the change of seed
                let d = to_cosine(&seed_e.sub(s_old)?);
                x0.iter().zip(&d).map(|(a, b)| a + b).collect()
            }
            _ => to_cosine(&seed_e),
        };
        match pe.run(start, &mut trace) {
            Ok((xe, _)) => {
                x = Some(xe);
                prev_seed = Some(seed_e);
            }
            Err(err) => {
                failures.push(err);
                let traces: Vec<f64> = trace.clone();
                return Err(Error::NewtonDivergence {
                    reason: format!(
                        "all seeds and continuation failed at eps={e}: {}",
                        failures.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" | ")
                    ),
                    trace: traces,
                });
            }
        }
    }
    let xf = x.expect("ladder ends at eps");
    let (_, norm, _) = prob.residual(&xf)?;
    finish(xf, norm, SeedKind::Calibrated, peak, trace, true)
}

/// Solves each `ε` independently, in the given order.
pub fn solve_ladder(
    p: &PhysicalParams,
    branch: Branch,
    eps: &[f64],
    sign: f64,
    cfg: &SolverConfig,
) -> Vec<Result<WaveProfile>> {
    eps.iter().map(|&e| solve(p, branch, e, sign, cfg)).collect()
}
