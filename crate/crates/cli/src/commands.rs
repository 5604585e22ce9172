use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use capwave::babenko::{
    frequency_split_diagnostic, nls_error, reconstruct, solve, JacobianMode, LinearSolver,
    SolverConfig, WaveProfile,
};
use capwave::dispersion::{critical_points, wave_speed_branches, Branch};
use capwave::interval::{vstar, VStar};
use capwave::radicals::{solve_quartic, sweep};
use capwave::PhysicalParams;

use crate::cli::{ParamArgs, WaveArgs};
use crate::config::Config;
use crate::output::{num, Run};
use crate::{threads, Failure};

const VSTAR_BRACKET: (f64, f64) = (0.110335, 0.110336);

fn physical(run: &mut Run, cfg: &Config, a: ParamArgs) -> Result<PhysicalParams, Failure> {
    let g = cfg.f64(a.g, "g", 1.0)?;
    let sigma = cfg.f64(a.sigma, "sigma", 1.0)?;
    let gamma = cfg.f64(a.gamma, "gamma", 1.0)?;
    run.param("g", g);
    run.param("sigma", sigma);
    run.param("gamma", gamma);
    Ok(PhysicalParams::new(g, sigma, gamma)?)
}

pub fn dispersion(
    out: &Path,
    cfg: &Config,
    params: ParamArgs,
    k_min: Option<f64>,
    k_max: Option<f64>,
    samples: Option<usize>,
) -> Result<(), Failure> {
    let mut run = Run::new(out, "dispersion")?;
    let p = physical(&mut run, cfg, params)?;
    let k_min = cfg.f64(k_min, "k_min", -4.0)?;
    let k_max = cfg.f64(k_max, "k_max", -0.05)?;
    let samples = cfg.usize(samples, "samples", 200)?;
    if !(k_min < k_max && k_max < 0.0) || samples < 2 {
        return Err(Failure::Usage(format!(
            "need k_min < k_max < 0 and samples >= 2 (got {k_min}, {k_max}, {samples})"
        )));
    }
    run.param("k_min", k_min);
    run.param("k_max", k_max);
    run.param("samples", samples);
    let rows = (0..samples)
        .map(|i| {
            let k = k_min + (k_max - k_min) * i as f64 / (samples - 1) as f64;
            let (cp, cm) = wave_speed_branches(&p, k)?;
            Ok(vec![num(k), num(cp), num(cm)])
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let path = run.csv("dispersion.csv", "k,c_plus,c_minus", &rows)?;
    say!("{}", path.display());
    run.finish()?;
    Ok(())
}

pub fn critical(out: &Path, cfg: &Config, params: ParamArgs) -> Result<(), Failure> {
    let mut run = Run::new(out, "critical")?;
    let p = physical(&mut run, cfg, params)?;
    let cps = critical_points(&p)?;
    let text = serde_json::to_string_pretty(&cps).expect("critical points serialize");
    // a bare array cannot carry the manifest key, so it is wrapped
    run.json("critical.json", json!({ "critical_points": cps }))?;
    say!("{text}");
    run.finish()?;
    Ok(())
}

pub fn radicals(
    out: &Path,
    cfg: &Config,
    g_recip: Option<f64>,
    v: Option<f64>,
) -> Result<(), Failure> {
    let mut run = Run::new(out, "radicals")?;
    let inv = |v: f64| {
        if v > 0.0 {
            Ok(1.0 / v)
        } else {
            Err(Failure::Usage(format!("V must be positive, got {v}")))
        }
    };
    let g = match (g_recip, v) {
        (Some(g), _) => g,
        (None, Some(v)) => inv(v)?,
        (None, None) => match (cfg.opt_f64(None, "G")?, cfg.opt_f64(None, "V")?) {
            (Some(g), _) => g,
            (None, Some(v)) => inv(v)?,
            (None, None) => return Err(Failure::Usage("radicals needs --G or --V".into())),
        },
    };
    run.param("G", g);
    let sol = solve_quartic(g)?;
    run.json("radicals.json", sol)?;
    say!("{}", serde_json::to_string_pretty(&sol).expect("solution serializes"));
    run.finish()?;
    Ok(())
}

#[derive(Serialize)]
struct VStarReport {
    #[serde(flatten)]
    enclosure: VStar,
    width: f64,
    inside_bracket: bool,
    bracket: [f64; 2],
}

pub fn vstar_cmd(out: &Path, cfg: &Config, width: Option<f64>) -> Result<(), Failure> {
    let mut run = Run::new(out, "vstar")?;
    let width = cfg.f64(width, "width", 1e-9)?;
    if !(width > 0.0) {
        return Err(Failure::Usage(format!("width must be positive, got {width}")));
    }
    run.param("width", width);
    let v = vstar(width)?;
    let inside = v.inside_published_bracket()
        && v.lo >= VSTAR_BRACKET.0
        && v.hi <= VSTAR_BRACKET.1
        && v.hi - v.lo <= width;
    let report = VStarReport {
        width: v.hi - v.lo,
        inside_bracket: inside,
        bracket: [VSTAR_BRACKET.0, VSTAR_BRACKET.1],
        enclosure: v,
    };
    run.json("vstar.json", &report)?;
    say!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    run.finish()?;
    if !inside {
        return Err(Failure::Validation(format!(
            "enclosure [{}, {}] is not a unique root inside [{}, {}]",
            report.enclosure.lo, report.enclosure.hi, VSTAR_BRACKET.0, VSTAR_BRACKET.1
        )));
    }
    Ok(())
}

struct WaveSetup {
    p: PhysicalParams,
    branch: Branch,
    sign: f64,
    cfg: SolverConfig,
}

fn parse_enum<T: serde::de::DeserializeOwned>(key: &str, s: &str) -> Result<T, Failure> {
    serde_json::from_value(Value::String(s.to_string()))
        .map_err(|_| Failure::Usage(format!("invalid {key} {s:?}")))
}

fn wave_setup(
    run: &mut Run,
    cfg: &Config,
    params: ParamArgs,
    w: WaveArgs,
) -> Result<WaveSetup, Failure> {
    let p = physical(run, cfg, params)?;
    let branch_s = cfg.string(w.branch, "branch", "c2")?;
    let branch = match branch_s.as_str() {
        "c1" => Branch::Plus,
        "c2" => Branch::Minus,
        other => return Err(Failure::Usage(format!("branch must be c1 or c2, got {other:?}"))),
    };
    let sign_s = cfg.string(w.sign, "sign", "+")?;
    let sign = match sign_s.as_str() {
        "+" | "plus" | "1" | "+1" => 1.0,
        "-" | "minus" | "-1" => -1.0,
        other => return Err(Failure::Usage(format!("sign must be + or -, got {other:?}"))),
    };
    let mut scfg = SolverConfig::default();
    scfg.newton_tol = cfg.f64(w.newton_tol, "newton_tol", scfg.newton_tol)?;
    scfg.max_iter = cfg.usize(w.max_iter, "max_iter", scfg.max_iter)?;
    let jac = cfg.string(w.jacobian, "jacobian", "analytic")?;
    scfg.jacobian_mode = parse_enum::<JacobianMode>("jacobian", &jac)?;
    let lin = cfg.string(w.linear_solver, "linear_solver", "auto")?;
    scfg.linear_solver = parse_enum::<LinearSolver>("linear_solver", &lin)?;
    let n = cfg.opt_usize(w.n, "n")?;
    let length = cfg.opt_f64(w.length, "length")?;
    scfg.grid = match (n, length) {
        (Some(n), Some(l)) => Some((n, l)),
        (None, None) => None,
        _ => return Err(Failure::Usage("n and length must be given together".into())),
    };
    run.param("branch", branch.label());
    run.param("sign", if sign > 0.0 { "+" } else { "-" });
    run.param("newton_tol", scfg.newton_tol);
    run.param("max_iter", scfg.max_iter);
    run.param("jacobian", jac);
    run.param("linear_solver", lin);
    run.param("n", n);
    run.param("length", length);
    Ok(WaveSetup { p, branch, sign, cfg: scfg })
}

fn profile_stem(w: &WaveProfile) -> String {
    let s = if w.sign > 0.0 { "plus" } else { "minus" };
    format!("profile_{}_{s}_eps{}", w.branch.label(), w.eps)
}

/// Profile CSV and its sidecar; returns the sidecar value.
fn write_profile(run: &mut Run, w: &WaveProfile) -> Result<Value, Failure> {
    let (wf, qf) = reconstruct(w)?;
    let grid = *w.u.grid();
    let rows: Vec<Vec<String>> = (0..grid.n)
        .map(|j| {
            vec![
                num(grid.node(j)),
                num(w.u.values()[j]),
                num(qf.values()[j].im),
                num(wf.values()[j].re),
                num(qf.values()[j].re),
            ]
        })
        .collect();
    let stem = profile_stem(w);
    run.csv(&format!("{stem}.csv"), "alpha,U,ImQ,ReW,ReQ", &rows)?;
    let side = json!({
        "g": w.params.g,
        "sigma": w.params.sigma,
        "gamma": w.params.gamma,
        "branch": w.branch.label(),
        "sign": w.sign,
        "c_star": w.c_star,
        "c": w.c,
        "eps": w.eps,
        "omega": w.omega,
        "residual_norm": w.residual_norm,
        "seed_amplitude": w.seed_amplitude,
        "seed_kind": w.seed_kind,
        "effective_cubic": w.cubic.mu,
        "iterations": w.iterations,
        "continuation_used": w.continuation_used,
        "nls_error": nls_error(w)?,
        "sup_over_eps": w.sup_over_eps(),
        "jacobian_min": w.jacobian_min()?,
        "grid": { "n": grid.n, "L": grid.length },
        "profile": format!("{stem}.csv"),
    });
    run.json(&format!("{stem}.json"), &side)?;
    Ok(side)
}

pub fn solve_cmd(
    out: &Path,
    cfg: &Config,
    params: ParamArgs,
    wave: WaveArgs,
    eps: Option<f64>,
) -> Result<(), Failure> {
    let mut run = Run::new(out, "solve")?;
    let s = wave_setup(&mut run, cfg, params, wave)?;
    let eps = cfg.f64(eps, "eps", 0.04)?;
    run.param("eps", eps);
    let w = solve(&s.p, s.branch, eps, s.sign, &s.cfg)?;
    let side = write_profile(&mut run, &w)?;
    say!("{}", serde_json::to_string_pretty(&side).expect("sidecar serializes"));
    run.finish()?;
    Ok(())
}

pub fn converge(
    out: &Path,
    cfg: &Config,
    params: ParamArgs,
    wave: WaveArgs,
    ladder: Option<Vec<f64>>,
    delta: Option<f64>,
) -> Result<(), Failure> {
    let mut run = Run::new(out, "converge")?;
    let s = wave_setup(&mut run, cfg, params, wave)?;
    let ladder = cfg.list(ladder, "eps_ladder", &[0.08, 0.04, 0.02, 0.01])?;
    if ladder.is_empty() {
        return Err(Failure::Usage("empty eps ladder".into()));
    }
    run.param("eps_ladder", &ladder);
    let delta = cfg.opt_f64(delta, "delta")?;
    run.param("delta", delta);

    // independent solves, collected in input order
    let workers = threads().min(ladder.len());
    let chunk = ladder.len().div_ceil(workers);
    let results: Vec<capwave::Result<WaveProfile>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ladder
            .chunks(chunk)
            .map(|part| {
                let s = &s;
                scope.spawn(move || {
                    part.iter().map(|&e| solve(&s.p, s.branch, e, s.sign, &s.cfg)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let profiles = results.into_iter().collect::<capwave::Result<Vec<_>>>()?;

    let omega = profiles[0].omega;
    let delta = delta.unwrap_or(0.5 * omega.abs());
    let split = if profiles.len() >= 3 {
        Some(frequency_split_diagnostic(&profiles, delta)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    let mut errs = Vec::new();
    let mut sups = Vec::new();
    for (i, w) in profiles.iter().enumerate() {
        write_profile(&mut run, w)?;
        let e = nls_error(w)?;
        errs.push(e);
        sups.push(w.sup_over_eps());
        let ratio = split
            .as_ref()
            .and_then(|r| r.rows[i].ratio)
            .map(num)
            .unwrap_or_default();
        rows.push(vec![
            num(w.eps),
            num(w.c),
            w.u.grid().n.to_string(),
            num(w.u.grid().length),
            w.iterations.to_string(),
            num(w.residual_norm),
            num(e),
            num(w.sup_over_eps()),
            ratio,
        ]);
    }
    run.csv(
        "converge.csv",
        "eps,c,n,L,iterations,residual_norm,nls_error,sup_over_eps,split_ratio",
        &rows,
    )?;
    // ordered by decreasing eps for the monotonicity verdict
    let mut order: Vec<usize> = (0..profiles.len()).collect();
    order.sort_by(|&a, &b| profiles[b].eps.total_cmp(&profiles[a].eps));
    let decreasing = order.windows(2).all(|w| errs[w[1]] < errs[w[0]]);
    let (lo, hi) = sups.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
    let summary = json!({
        "branch": s.branch.label(),
        "sign": s.sign,
        "eps": ladder,
        "nls_error": errs,
        "sup_over_eps": sups,
        "nls_error_decreasing": decreasing,
        "sup_over_eps_spread": hi / lo,
        "frequency_split": split,
    });
    run.json("converge.json", &summary)?;
    say!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    run.finish()?;
    Ok(())
}

pub fn sweep_cmd(
    out: &Path,
    cfg: &Config,
    v_min: Option<f64>,
    v_max: Option<f64>,
    samples: Option<usize>,
) -> Result<(), Failure> {
    let mut run = Run::new(out, "sweep")?;
    let v_min = cfg.f64(v_min, "v_min", 0.01)?;
    let v_max = cfg.f64(v_max, "v_max", 0.5)?;
    let samples = cfg.usize(samples, "samples", 100)?;
    if !(v_min > 0.0 && v_min < v_max) || samples < 2 {
        return Err(Failure::Usage(format!(
            "need 0 < v_min < v_max and samples >= 2 (got {v_min}, {v_max}, {samples})"
        )));
    }
    run.param("v_min", v_min);
    run.param("v_max", v_max);
    run.param("samples", samples);
    let sw = sweep(v_min, v_max, samples)?;
    let rows: Vec<Vec<String>> = sw
        .rows
        .iter()
        .map(|r| vec![num(r.v), num(r.omega_plus), num(r.f), r.focusing_count.to_string()])
        .collect();
    let path = run.csv("sweep.csv", "V,omega_plus,f,focusing_count", &rows)?;
    run.json("sweep.json", json!({ "sign_changes": sw.sign_changes, "csv": "sweep.csv" }))?;
    say!("{}", path.display());
    for v in &sw.sign_changes {
        say!("sign change of f at V = {v}");
    }
    run.finish()?;
    Ok(())
}
