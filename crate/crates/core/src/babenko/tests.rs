use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rustfft::num_complex::Complex64;

use super::*;
use crate::dispersion::{critical_point, symbol_l, Branch};
use crate::spectral::{abs_d, h_s, l2, to_cosine, PeriodicGrid, RealField, Window};

fn params(g: f64, s: f64, gm: f64) -> PhysicalParams {
    PhysicalParams::new(g, s, gm).unwrap()
}

/// Band-limited random field with decaying modes up to `n/4`.
fn random_field(grid: PeriodicGrid, amp: f64, seed: u64) -> RealField {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let modes: Vec<(f64, f64, f64)> = (1..grid.n / 4)
        .map(|k| {
            let w = amp / (k * k) as f64;
            (k as f64, w * rng.random_range(-1.0..1.0), w * rng.random_range(-1.0..1.0))
        })
        .collect();
    let l = grid.length;
    let base = rng.random_range(-1.0..1.0) * amp * 0.1;
    RealField::from_fn(grid, |x| {
        base + modes
            .iter()
            .map(|(k, a, b)| a * (2.0 * PI * k * x / l).cos() + b * (2.0 * PI * k * x / l).sin())
            .sum::<f64>()
    })
}

fn dot(a: &RealField, b: &RealField) -> f64 {
    a.inner(b).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

mod oracle {
    //! Same discretisation evaluated with O(n²) trigonometric sums.
    use super::*;

    fn dft(v: &[f64]) -> Vec<Complex64> {
        let m = v.len();
        (0..m)
            .map(|k| {
                (0..m)
                    .map(|j| v[j] * Complex64::from_polar(1.0, -2.0 * PI * (j * k % m) as f64 / m as f64))
                    .sum()
            })
            .collect()
    }

    /// Signed mode index of slot `k` in a length-`m` spectrum.
    fn signed(k: usize, m: usize) -> i64 {
        if k <= m / 2 { k as i64 } else { k as i64 - m as i64 }
    }

    /// Evaluates `Σ_{|k|<cut} mult(k)·c_k e^{2πi k j/m_out}` on `m_out` points.
    fn synth(
        spec: &[Complex64],
        cut: i64,
        m_out: usize,
        mult: impl Fn(i64) -> Complex64,
    ) -> Vec<f64> {
        let m_in = spec.len();
        let mut out = vec![0.0; m_out];
        for (k, &z) in spec.iter().enumerate() {
            let ks = signed(k, m_in);
            if ks.abs() >= cut {
                continue;
            }
            let w = z * mult(ks) / m_in as f64;
            for (j, o) in out.iter_mut().enumerate() {
                let ph = 2.0 * PI * ((ks.rem_euclid(m_out as i64) as usize * j) % m_out) as f64
                    / m_out as f64;
                *o += (w * Complex64::from_polar(1.0, ph)).re;
            }
        }
        out
    }

    pub fn residual(u: &[f64], length: f64, c: f64, p: &PhysicalParams) -> Vec<f64> {
        let n = u.len();
        let m = 2 * n;
        let dk = 2.0 * PI / length;
        let i = Complex64::new(0.0, 1.0);
        let one = |_: i64| Complex64::new(1.0, 0.0);
        let dxm = |k: i64| i * (k as f64 * dk);
        let absd = |k: i64| Complex64::new((k as f64 * dk).abs(), 0.0);
        let nyq = (n / 2) as i64;
        let su = dft(u);
        let up = synth(&su, nyq, m, one);
        let ua = synth(&su, nyq, m, dxm);
        let du = synth(&su, nyq, m, absd);
        let u2: Vec<f64> = up.iter().map(|v| v * v).collect();
        let du2 = synth(&dft(&u2), n as i64, m, absd);
        let (g, s, gm) = (p.g, p.sigma, p.gamma);
        let mut p0 = vec![0.0; m];
        let mut p1 = vec![0.0; m];
        let mut p2 = vec![0.0; m];
        for j in 0..m {
            let sj = 1.0 / ((1.0 + du[j]).powi(2) + ua[j].powi(2)).sqrt();
            let v = up[j];
            p0[j] = (g + c * gm) * v + gm * gm * v * v / 2.0 + g * v * du[j]
                - gm * gm / 2.0 * v * du2[j]
                + gm * gm / 2.0 * v * v * du[j]
                - c * c * du[j];
            p1[j] = s * (1.0 + du[j]) * sj + g / 2.0 * v * v + gm * gm / 6.0 * v * v * v;
            p2[j] = -s * ua[j] * sj;
        }
        // project back onto |k| < n/2 and resample to the base grid
        let a = synth(&dft(&p0), nyq, n, one);
        let b = synth(&dft(&p1), nyq, n, absd);
        let d = synth(&dft(&p2), nyq, n, dxm);
        (0..n).map(|j| a[j] + b[j] + d[j]).collect()
    }
}

#[test]
fn residual_matches_direct_summation() {
    let grid = PeriodicGrid::new(64, 2.0 * PI * 3.0).unwrap();
    for (seed, p, c) in [(1, params(1.0, 1.0, 1.0), 1.7), (2, params(0.0, 1.0, 1.0), 1.5)] {
        let u = random_field(grid, 0.05, seed);
        let fast = babenko_residual(&u, c, &p).unwrap();
        let slow = oracle::residual(u.values(), grid.length, c, &p);
        let scale = slow.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let err = fast.values().iter().zip(&slow).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10 * scale.max(1.0), "err {err}");
    }
}

#[test]
fn zero_field() {
    let grid = PeriodicGrid::new(32, 10.0).unwrap();
    let z = RealField::zeros(grid);
    let p = params(1.0, 1.0, 1.0);
    assert!(babenko_residual(&z, 1.0, &p).unwrap().max_abs() == 0.0);
    assert!(capillary_terms(&z, 1.0).unwrap().max_abs() == 0.0);
    assert!(jacobian_j(&z).unwrap().values().iter().all(|&v| v == 1.0));
    assert_eq!(energy(&z, 1.0, &p).unwrap(), 0.0);
    assert_eq!(momentum(&z, 1.0, &p).unwrap(), 0.0);
}

#[test]
fn jacobian_closed_form() {
    let grid = PeriodicGrid::new(64, 2.0 * PI).unwrap();
    let (a, k) = (0.05, 3.0);
    let u = RealField::from_fn(grid, |x| a * (k * x).cos());
    let j = jacobian_j(&u).unwrap();
    for (x, v) in grid.nodes().iter().zip(j.values()) {
        let exact = (1.0 + a * k * (k * x).cos()).powi(2) + (a * k * (k * x).sin()).powi(2);
        assert!((v - exact).abs() < 1e-13);
    }
    let r = random_field(grid, 0.02, 7);
    let bound = (1.0 - abs_d(&r).max_abs()).powi(2);
    assert!(jacobian_j(&r).unwrap().values().iter().all(|&v| v >= bound - 1e-15));
}

#[test]
fn large_profile_rejected() {
    let grid = PeriodicGrid::new(64, 2.0 * PI).unwrap();
    // a|k| = 1 makes 1 + W_α vanish at the troughs
    let u = RealField::from_fn(grid, |x| 0.25 * (4.0 * x).cos());
    assert!(matches!(jacobian_j(&u), Err(Error::NonPositiveJacobian(_))));
    let p = params(1.0, 1.0, 1.0);
    assert!(matches!(babenko_residual(&u, 1.0, &p), Err(Error::NonPositiveJacobian(_))));
}

#[test]
fn linear_response_is_the_symbol() {
    let grid = PeriodicGrid::new(64, 2.0 * PI).unwrap();
    let p = params(1.0, 1.0, 1.0);
    let c = 1.3;
    for k in [1.0, 2.0, 5.0] {
        let cosk = RealField::from_fn(grid, |x| (k * x).cos());
        let lin = babenko_frechet(&RealField::zeros(grid), c, &p, &cosk).unwrap();
        let expect = cosk.scale(symbol_l(&p, c, k));
        assert!(lin.sub(&expect).unwrap().max_abs() < 1e-12);
        let cap = babenko_frechet(&RealField::zeros(grid), 0.0, &params(0.0, 1.0, 0.0), &cosk)
            .unwrap();
        assert!(cap.sub(&cosk.scale(k * k)).unwrap().max_abs() < 1e-12);

        let a = 1e-3;
        let r = babenko_residual(&cosk.scale(a), c, &p).unwrap();
        let coef = to_cosine(&r)[k as usize] / a;
        assert!(rel(coef, symbol_l(&p, c, k)) < 1e-4 * symbol_l(&p, c, k).abs().max(1.0));
    }
}

#[test]
fn frechet_matches_central_differences() {
    let grid = PeriodicGrid::new(64, 2.0 * PI * 4.0).unwrap();
    let p = params(1.0, 1.0, 1.0);
    let mut worst: f64 = 0.0;
    for t in 0..20 {
        let u = random_field(grid, 0.1, 100 + t);
        let v = random_field(grid, 1.0, 200 + t);
        let c = 1.5;
        let exact = babenko_frechet(&u, c, &p, &v).unwrap();
        let h = 1e-6 * u.max_abs() / v.max_abs();
        let fp = babenko_residual(&u.add(&v.scale(h)).unwrap(), c, &p).unwrap();
        let fm = babenko_residual(&u.sub(&v.scale(h)).unwrap(), c, &p).unwrap();
        let fd = fp.sub(&fm).unwrap().scale(0.5 / h);
        worst = worst.max(l2(&exact.sub(&fd).unwrap()) / l2(&exact));
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn linearisation_is_symmetric() {
    let grid = PeriodicGrid::new(32, 2.0 * PI * 2.0).unwrap();
    let p = params(1.0, 2.0, -0.7);
    let u = random_field(grid, 0.1, 9);
    let m = frechet_matrix(&u, 0.9, &p).unwrap();
    let asym = (&m - m.transpose()).abs().max();
    assert!(asym < 1e-8 * m.abs().max(), "{asym}");
}

#[test]
fn residual_is_gradient_of_lagrangian() {
    let grid = PeriodicGrid::new(64, 2.0 * PI * 4.0).unwrap();
    let mut worst: f64 = 0.0;
    for (t, p) in [params(1.0, 1.0, 1.0), params(0.0, 1.0, 1.0), params(2.0, 0.5, -1.5)]
        .iter()
        .cycle()
        .take(10)
        .enumerate()
    {
        let u = random_field(grid, 0.08, 300 + t as u64);
        let v = random_field(grid, 1.0, 400 + t as u64);
        let c = 1.2;
        let r = babenko_residual(&u, c, p).unwrap();
        let h = 1e-5;
        let lp = lagrangian(&u.add(&v.scale(h)).unwrap(), c, p).unwrap();
        let lm = lagrangian(&u.sub(&v.scale(h)).unwrap(), c, p).unwrap();
        let fd = (lp - lm) / (2.0 * h);
        worst = worst.max(rel(dot(&r, &v), fd));
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn functional_derivative_of_dirichlet_form() {
    // J(f) = ∫(|D|f)², δJ/δf = 2|D|²f
    let grid = PeriodicGrid::new(64, 7.0).unwrap();
    let f = random_field(grid, 1.0, 11);
    let v = random_field(grid, 1.0, 12);
    let jf = |g: &RealField| l2(&abs_d(g)).powi(2);
    let h = 1e-6;
    let fd = (jf(&f.add(&v.scale(h)).unwrap()) - jf(&f.sub(&v.scale(h)).unwrap())) / (2.0 * h);
    let grad = abs_d(&abs_d(&f)).scale(2.0);
    assert!(rel(dot(&grad, &v), fd) < 1e-8);
}

fn expansion_mismatch(u: &RealField, a: f64, form: CapillaryExpansion) -> f64 {
    let ua = u.scale(a);
    let exact = capillary_terms(&ua, 1.0).unwrap();
    let approx = capillary_expansion(&ua, 1.0, form).unwrap();
    l2(&exact.sub(&approx).unwrap())
}

#[test]
fn capillary_expansion_orders() {
    let grid = PeriodicGrid::new(128, 2.0 * PI).unwrap();
    let u = random_field(grid, 1.0, 21);
    let ratios = |form| {
        let errs: Vec<f64> =
            (0..4).map(|i| expansion_mismatch(&u, 1e-2 * 0.5f64.powi(i), form)).collect();
        errs.windows(2).map(|w| w[0] / w[1]).collect::<Vec<_>>()
    };
    for r in ratios(CapillaryExpansion::Complete) {
        assert!((r - 16.0).abs() < 1.0, "{r}");
    }
    // the quoted form drops a cubic term, so it is only third order
    for r in ratios(CapillaryExpansion::Quoted) {
        assert!((r - 8.0).abs() < 0.5, "{r}");
    }
}

#[test]
fn pure_capillary_soliton() {
    let p = params(0.0, 1.0, 1.0);
    let cp = critical_point(&p, Branch::Minus).unwrap();
    let r0 = nls_profile(&p, cp.omega, 0.0).unwrap();
    let expect = (6.0 / 2f64.powf(4.0 / 3.0)).sqrt();
    assert!(rel(r0, expect) < 1e-12, "{r0}");
    // decay rate √3
    let b = 7.0;
    let ratio = nls_profile(&p, cp.omega, b).unwrap() / r0;
    assert!(rel(ratio, 1.0 / (3f64.sqrt() * b).cosh()) < 1e-12);
    let grid = PeriodicGrid::new(1024, 60.0).unwrap();
    for sign in [1.0, -1.0] {
        assert!(nls_residual(&p, cp.omega, sign, grid).unwrap() < 1e-10);
    }
}

#[test]
fn defocusing_has_no_soliton() {
    let p = params(1.0, 1.0, 1.0);
    let cp = critical_point(&p, Branch::Plus).unwrap();
    assert!(cp.a2 < 0.0);
    assert!(matches!(nls_profile(&p, cp.omega, 0.0), Err(Error::Defocusing(_))));
}

#[test]
fn effective_cubic_gravity_capillary() {
    // γ = 0, g = σ = 1: c* = √2, ω = −1. Periodic waves give c = c* − (11√2/32)a².
    let p = params(1.0, 1.0, 0.0);
    let cp = critical_point(&p, Branch::Minus).unwrap();
    let mu = effective_cubic(&p, &cp).unwrap();
    assert!(rel(mu.mu, 11.0 * 2f64.sqrt() / 32.0) < 1e-6, "{mu:?}");
}

#[test]
fn effective_cubic_pure_capillary() {
    // peak² = 2/μ equals (32/3)·ρ*(0)² for g = 0, σ = γ = 1
    let p = params(0.0, 1.0, 1.0);
    let cp = critical_point(&p, Branch::Minus).unwrap();
    let mu = effective_cubic(&p, &cp).unwrap();
    let rho0 = nls_profile(&p, cp.omega, 0.0).unwrap();
    assert!(rel(2.0 / mu.mu, 32.0 / 3.0 * rho0 * rho0) < 1e-6, "{mu:?}");
}

#[test]
fn seed_properties() {
    let p = params(0.0, 1.0, 1.0);
    let cp = critical_point(&p, Branch::Minus).unwrap();
    let grid = PeriodicGrid::new(4096, 2000.0).unwrap();
    let zero = seed_profile(grid, &p, &cp, 0.0, 1.0, 1.0);
    assert_eq!(zero.max_abs(), 0.0);
    for eps in [0.05, 0.02] {
        let s = seed_profile(grid, &p, &cp, eps, 1.0, 1.5);
        let v = s.values();
        assert!((1..grid.n).all(|j| v[j] == v[grid.mirror(j)]));
        let inside = s.windowed(Window::Chi, cp.omega, cp.omega.abs() / 2.0).unwrap();
        assert!((l2(&inside) / l2(&s)).powi(2) > 0.99);
    }
}

#[test]
fn small_solve_converges() {
    let p = params(0.0, 1.0, 1.0);
    let cfg = SolverConfig { linear_solver: LinearSolver::Gmres, ..SolverConfig::default() };
    let w = solve(&p, Branch::Minus, 0.05, 1.0, &cfg).unwrap();
    assert!(w.residual_norm < 1e-10);
    assert!(w.u.odd_part().max_abs() < 1e-12);
    let r = babenko_residual(&w.u, w.c, &p).unwrap();
    assert!(l2(&r) < 1e-10);
    assert!(w.sup_over_eps() > 2.0 && w.sup_over_eps() < 10.0);
    let (wf, qf) = reconstruct(&w).unwrap();
    assert!(wf.im().sub(&w.u).unwrap().max_abs() == 0.0);
    assert!(wf.positive_frequency_fraction() < 1e-10);
    let q = qf.im();
    let gm = p.gamma;
    for (qi, ui) in q.values().iter().zip(w.u.values()) {
        assert!((qi + 0.5 * gm * ui * ui + w.c * ui).abs() < 1e-13);
    }
    assert!(h_s(&w.u, 1.0) > 0.0);
}

#[test]
fn split_diagnostic_pure_cosine() {
    let grid = PeriodicGrid::new(256, 2.0 * PI * 16.0).unwrap();
    let u = RealField::from_fn(grid, |x| 0.01 * (x).cos());
    let row = diagnostics::split_row(&u, -1.0, 0.1, 0.5).unwrap();
    assert!(row.u2_h2 < 1e-14 && row.ratio.unwrap() < 1e-10);
    let z = diagnostics::split_row(&RealField::zeros(grid), -1.0, 0.0, 0.5).unwrap();
    assert_eq!((z.u2_h2, z.u1_e, z.ratio), (0.0, 0.0, None));
    // quadratic response to an in-band wave sits at 0 and ±2ω
    let p = params(1.0, 1.0, 1.0);
    let r = babenko_residual(&u, 1.0, &p).unwrap();
    let quad = r.sub(&babenko_frechet(&RealField::zeros(grid), 1.0, &p, &u).unwrap()).unwrap();
    let spec = quad.spectrum();
    let total: f64 = spec.iter().map(|z| z.norm_sqr()).sum();
    let near: f64 = spec
        .iter()
        .enumerate()
        .filter(|(k, _)| {
            let xi = grid.wavenumber(*k).abs();
            xi < 0.5 || (xi - 2.0).abs() < 0.5
        })
        .map(|(_, z)| z.norm_sqr())
        .sum();
    assert!(near / total > 0.999, "{}", near / total);
}

#[test]
fn config_validation() {
    let cfg = SolverConfig { newton_tol: 0.0, ..SolverConfig::default() };
    assert!(cfg.validate().is_err());
    let p = params(1.0, 1.0, 1.0);
    assert!(solve(&p, Branch::Minus, 0.5, 1.0, &SolverConfig::default()).is_err());
}
