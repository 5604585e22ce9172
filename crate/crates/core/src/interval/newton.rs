//! Interval Newton method with bisection fallback.
//!
//! Each box `X` is tested with `f(X)`; boxes whose image excludes zero are
//! discarded. Otherwise the Newton operator `N(X) = m − f(m)/f'(X)` is
//! intersected with `X`. When `f'(X)` contains zero or the contraction
//! stalls, the box is bisected.

use serde::{Deserialize, Serialize};

use super::Interval;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub interval: Interval,
    /// Existence proven and the derivative enclosure over `interval` excludes zero.
    pub unique: bool,
    /// Width reached the target.
    pub contracted: bool,
    pub iterations: usize,
    /// Chain of boxes from the search interval down to `interval`.
    #[serde(skip)]
    pub trace: Vec<Interval>,
}

#[derive(Debug, Clone, Copy)]
pub struct NewtonConfig {
    pub width_target: f64,
    pub max_iterations: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        Self { width_target: 1e-12, max_iterations: 100_000 }
    }
}

struct Pending {
    x: Interval,
    trace: Vec<Interval>,
    proven: bool,
}

fn point_sign<F>(f: &F, x: f64) -> Option<f64>
where
    F: Fn(Interval) -> Result<Interval>,
{
    let y = f(Interval::point(x)).ok()?;
    if y.is_positive() {
        Some(1.0)
    } else if y.is_negative() {
        Some(-1.0)
    } else {
        None
    }
}

/// Encloses every root of `f` in `search`.
///
/// `df` must enclose the derivative of `f` over its argument. An evaluation
/// error on a box (e.g. a square root of a negative interval) drops that box
/// to bisection; on boxes narrower than the target it is kept unflagged.
pub fn interval_newton<F, D>(f: F, df: D, search: Interval, cfg: NewtonConfig) -> Vec<RootEnclosure>
where
    F: Fn(Interval) -> Result<Interval>,
    D: Fn(Interval) -> Result<Interval>,
{
    let mut stack = vec![Pending { x: search, trace: vec![search], proven: false }];
    let mut done: Vec<(Interval, bool, bool, Vec<Interval>)> = Vec::new();
    let mut iterations = 0usize;

    while let Some(Pending { x, mut trace, proven }) = stack.pop() {
        iterations += 1;
        if iterations > cfg.max_iterations {
            done.push((x, proven, false, trace));
            while let Some(p) = stack.pop() {
                done.push((p.x, p.proven, false, p.trace));
            }
            break;
        }
        let fx = match f(x) {
            Ok(v) => v,
            Err(_) => {
                if x.width() <= cfg.width_target {
                    done.push((x, false, true, trace));
                } else {
                    let m = x.split_point();
                    stack.push(child(x.lo, m, &trace, false));
                    stack.push(child(m, x.hi, &trace, false));
                }
                continue;
            }
        };
        if !fx.contains_zero() {
            continue;
        }
        if x.width() <= cfg.width_target {
            done.push((x, proven, true, trace));
            continue;
        }
        let dx = df(x).ok();
        match dx {
            Some(d) if !d.contains_zero() => {
                let m = x.split_point();
                let fm = match f(Interval::point(m)) {
                    Ok(v) => v,
                    Err(_) => {
                        stack.push(child(x.lo, m, &trace, proven));
                        stack.push(child(m, x.hi, &trace, proven));
                        continue;
                    }
                };
                let n = match fm.div(&d) {
                    Ok(q) => Interval::point(m) - q,
                    Err(_) => continue,
                };
                let now_proven = proven || n.is_interior_of(&x);
                let Some(next) = n.intersect(&x) else { continue };
                if next.width() > 0.5 * x.width() {
                    let mm = next.split_point();
                    stack.push(child(next.lo, mm, &trace, false));
                    stack.push(child(mm, next.hi, &trace, false));
                } else {
                    trace.push(next);
                    stack.push(Pending { x: next, trace, proven: now_proven });
                }
            }
            _ => {
                let m = x.split_point();
                stack.push(child(x.lo, m, &trace, false));
                stack.push(child(m, x.hi, &trace, false));
            }
        }
    }

    // merge boxes that touch: a root on a split point shows up twice
    done.sort_by(|a, b| a.0.lo.total_cmp(&b.0.lo));
    let mut merged: Vec<(Interval, bool, bool, Vec<Interval>)> = Vec::new();
    for item in done {
        if let Some(last) = merged.last_mut() {
            if item.0.lo <= last.0.hi {
                last.0 = last.0.hull(&item.0);
                last.1 = false;
                last.2 = last.2 && item.2 && last.0.width() <= 2.0 * cfg.width_target;
                continue;
            }
        }
        merged.push(item);
    }

    merged
        .into_iter()
        .map(|(x, proven, contracted, trace)| {
            let derivative_excludes_zero = df(x).map(|d| !d.contains_zero()).unwrap_or(false);
            let sign_change = matches!(
                (point_sign(&f, x.lo), point_sign(&f, x.hi)),
                (Some(a), Some(b)) if a * b < 0.0
            );
            RootEnclosure {
                interval: x,
                unique: derivative_excludes_zero && (proven || sign_change),
                contracted,
                iterations,
                trace,
            }
        })
        .collect()
}

fn child(lo: f64, hi: f64, trace: &[Interval], proven: bool) -> Pending {
    let x = Interval { lo, hi };
    let mut t = trace.to_vec();
    t.push(x);
    Pending { x, trace: t, proven }
}
