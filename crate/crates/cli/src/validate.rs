//! Property suite behind `capwave validate`.

use std::f64::consts::PI;
use std::path::Path;

use serde::Serialize;

use capwave::babenko::{
    babenko_frechet, babenko_residual, capillary_expansion, capillary_terms, frechet_matrix,
    lagrangian, solve, CapillaryExpansion, SolverConfig,
};
use capwave::dispersion::{critical_points, Branch};
use capwave::interval::focusing::log_spaced;
use capwave::interval::{verify_asymptotic_lemmas, vstar};
use capwave::radicals::{solve_quartic, sweep};
use capwave::spectral::{l2, PeriodicGrid, RealField};
use capwave::PhysicalParams;

use crate::output::Run;
use crate::Failure;

const BRACKET: (f64, f64) = (0.110335, 0.110336);

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    value: f64,
    tolerance: f64,
    /// Reported but excluded from the verdict.
    known_deviation: bool,
    detail: String,
}

fn check(name: &'static str, value: f64, tolerance: f64, detail: String) -> Check {
    Check { name, passed: value <= tolerance, value, tolerance, known_deviation: false, detail }
}

fn flag(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        value: if passed { 0.0 } else { 1.0 },
        tolerance: 0.0,
        known_deviation: false,
        detail,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Deterministic band-limited field with decaying modes up to `n/4`.
fn field(grid: PeriodicGrid, amp: f64, phase: f64) -> RealField {
    let l = grid.length;
    RealField::from_fn(grid, |x| {
        (1..grid.n / 4)
            .map(|k| {
                let k = k as f64;
                amp / (k * k) * (2.0 * PI * k * x / l + phase * k * k).cos()
            })
            .sum()
    })
}

fn interval_checks(out: &mut Vec<Check>) -> Result<(), Failure> {
    let v = vstar(1e-9)?;
    out.push(flag(
        "vstar_enclosure",
        v.inside_published_bracket()
            && v.lo >= BRACKET.0
            && v.hi <= BRACKET.1
            && v.hi - v.lo <= 1e-9,
        format!("[{}, {}], unique {}", v.lo, v.hi, v.unique),
    ));
    let rep = verify_asymptotic_lemmas(50)?;
    out.push(flag(
        "asymptotic_signs",
        rep.signs_ok(),
        format!("{} points, failures {:?}", rep.checks.len(), rep.sign_failures()),
    ));
    let b = rep.bracket_failures();
    out.push(Check {
        known_deviation: true,
        ..flag(
            "asymptotic_omega_bracket",
            b.is_empty(),
            format!("quoted bracket on omega_plus escapes at {} points (V > 1e6 tail)", b.len()),
        )
    });
    Ok(())
}

fn radicals_checks(out: &mut Vec<Check>) -> Result<(), Failure> {
    let mut worst: f64 = 0.0;
    let mut disc_ok = true;
    for g in log_spaced(1e-7, 1e7, 41) {
        let s = solve_quartic(g)?;
        let r = s.residuals;
        worst = worst.max(r.resolvent).max(r.omega_minus).max(r.omega_plus);
        disc_ok &= s.first_discriminant < 0.0;
    }
    out.push(check("radicals_residuals", worst, 1e-10, "41 G in [1e-7, 1e7]".into()));
    out.push(flag("radicals_first_discriminant_negative", disc_ok, String::new()));
    let sw = sweep(0.01, 0.5, 100)?;
    let ok = sw.sign_changes.len() == 1
        && sw.sign_changes[0] >= BRACKET.0
        && sw.sign_changes[0] <= BRACKET.1;
    out.push(flag("sweep_single_sign_change", ok, format!("{:?}", sw.sign_changes)));
    Ok(())
}

fn dispersion_checks(out: &mut Vec<Check>) -> Result<(), Failure> {
    let vals = log_spaced(0.1, 10.0, 5);
    let mut worst: f64 = 0.0;
    let mut invalid = 0;
    for &g in &vals {
        for &s in &vals {
            for &gm in &vals {
                for gm in [gm, -gm] {
                    let p = PhysicalParams::new(g, s, gm)?;
                    for cp in critical_points(&p)? {
                        worst = worst.max(cp.quartic_residual(&p));
                        invalid += cp.validate(&p).is_err() as usize;
                    }
                }
            }
        }
    }
    out.push(check("critical_quartic_residual", worst, 1e-10, format!("{invalid} invalid")));
    let p = PhysicalParams::new(0.0, 1.0, 1.0)?;
    let cps = critical_points(&p)?;
    let e = if cps.len() == 1 {
        rel(cps[0].c_star, 4f64.cbrt()).max(rel(cps[0].omega, -(2f64.cbrt())))
    } else {
        f64::INFINITY
    };
    out.push(check("pure_capillary_critical_point", e, 1e-12, format!("{} points", cps.len())));
    Ok(())
}

fn babenko_checks(out: &mut Vec<Check>) -> Result<(), Failure> {
    let grid = PeriodicGrid::new(64, 8.0 * PI)?;
    let (mut grad, mut frechet) = (0.0f64, 0.0f64);
    for (t, p) in [(1.0, 1.0, 1.0), (0.0, 1.0, 1.0), (2.0, 0.5, -1.5)].into_iter().enumerate() {
        let p = PhysicalParams::new(p.0, p.1, p.2)?;
        let c = 1.2;
        let u = field(grid, 0.08, 0.3 + t as f64);
        let v = field(grid, 1.0, 1.7 + t as f64);
        let r = babenko_residual(&u, c, &p)?;
        let h = 1e-5;
        let lp = lagrangian(&u.add(&v.scale(h))?, c, &p)?;
        let lm = lagrangian(&u.sub(&v.scale(h))?, c, &p)?;
        grad = grad.max(rel(r.inner(&v)?, (lp - lm) / (2.0 * h)));

        let exact = babenko_frechet(&u, c, &p, &v)?;
        let h = 1e-6 * u.max_abs() / v.max_abs();
        let fp = babenko_residual(&u.add(&v.scale(h))?, c, &p)?;
        let fm = babenko_residual(&u.sub(&v.scale(h))?, c, &p)?;
        let fd = fp.sub(&fm)?.scale(0.5 / h);
        frechet = frechet.max(l2(&exact.sub(&fd)?) / l2(&exact));
    }
    out.push(check("residual_is_gradient", grad, 1e-6, "3 parameter sets".into()));
    out.push(check("frechet_vs_finite_differences", frechet, 1e-6, "3 parameter sets".into()));

    let small = PeriodicGrid::new(32, 4.0 * PI)?;
    let m = frechet_matrix(&field(small, 0.1, 0.4), 0.9, &PhysicalParams::new(1.0, 2.0, -0.7)?)?;
    let asym = (&m - m.transpose()).abs().max() / m.abs().max();
    out.push(check("linearisation_symmetric", asym, 1e-8, "n = 32".into()));

    let cgrid = PeriodicGrid::new(128, 2.0 * PI)?;
    let u = field(cgrid, 1.0, 0.9);
    let spread = |form| -> Result<f64, Failure> {
        let mut norm = Vec::new();
        for i in 0..4 {
            let a = 1e-2 * 0.5f64.powi(i);
            let ua = u.scale(a);
            let d = capillary_terms(&ua, 1.0)?.sub(&capillary_expansion(&ua, 1.0, form)?)?;
            norm.push(l2(&d) / a.powi(4));
        }
        let (lo, hi) =
            norm.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        Ok(hi / lo)
    };
    let complete = spread(CapillaryExpansion::Complete)?;
    out.push(check(
        "capillary_expansion_fourth_order",
        complete,
        2.0,
        "max/min of err/a^4, a = 1e-2 .. 1.25e-3, omitted cubic terms restored".into(),
    ));
    let quoted = spread(CapillaryExpansion::Quoted)?;
    out.push(Check {
        known_deviation: true,
        ..check(
            "capillary_expansion_quoted_form",
            quoted,
            2.0,
            "quoted expansion leaves a third-order remainder".into(),
        )
    });

    let p = PhysicalParams::new(0.0, 1.0, 1.0)?;
    let w = solve(&p, Branch::Minus, 0.05, 1.0, &SolverConfig::default())?;
    out.push(check(
        "solve_pure_capillary",
        w.residual_norm,
        1e-10,
        format!("eps 0.05, n {}, odd part {:.1e}", w.u.grid().n, w.u.odd_part().max_abs()),
    ));
    Ok(())
}

pub fn run(out_dir: &Path) -> Result<(), Failure> {
    let mut run = Run::new(out_dir, "validate")?;
    let mut checks = Vec::new();
    interval_checks(&mut checks)?;
    radicals_checks(&mut checks)?;
    dispersion_checks(&mut checks)?;
    babenko_checks(&mut checks)?;
    let failed: Vec<&str> =
        checks.iter().filter(|c| !c.passed && !c.known_deviation).map(|c| c.name).collect();
    for c in &checks {
        let tag = match (c.passed, c.known_deviation) {
            (true, _) => "ok",
            (false, true) => "known deviation",
            (false, false) => "FAILED",
        };
        say!("{:<36} {tag:<16} {:.3e} (tol {:.1e}) {}", c.name, c.value, c.tolerance, c.detail);
    }
    run.json(
        "validate.json",
        serde_json::json!({ "passed": failed.is_empty(), "failed": failed, "checks": checks }),
    )?;
    run.finish()?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("failed checks: {}", failed.join(", "))))
    }
}
