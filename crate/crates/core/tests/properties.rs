use std::f64::consts::PI;

use num_rational::BigRational;
use proptest::prelude::*;

use capwave::babenko::{babenko_frechet, babenko_residual};
use capwave::dispersion::{
    critical_points, critical_velocities, wave_speed_branches, Branch,
};
use capwave::interval::Interval;
use capwave::params::nondimensionalize;
use capwave::radicals::solve_quartic;
use capwave::spectral::{abs_d, d_alpha, hilbert, l2, PeriodicGrid, RealField};
use capwave::PhysicalParams;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn q(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap()
}

fn inside(iv: Interval, x: &BigRational) -> bool {
    q(iv.lo) <= *x && *x <= q(iv.hi)
}

fn pos() -> impl Strategy<Value = f64> {
    (-1.0f64..1.0).prop_map(|e| 10f64.powf(e))
}

fn interval() -> impl Strategy<Value = (f64, f64, f64)> {
    (-1e3f64..1e3, 0.0f64..1e3, 0.0f64..=1.0).prop_map(|(a, w, t)| (a, a + w, a + t * w))
}

fn field(grid: PeriodicGrid, coeffs: &[(f64, f64)]) -> RealField {
    let l = grid.length;
    RealField::from_fn(grid, |x| {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, (a, b))| {
                let th = 2.0 * PI * (k + 1) as f64 * x / l;
                (a * th.cos() + b * th.sin()) / ((k + 1) * (k + 1)) as f64
            })
            .sum()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn interval_ops_contain_exact_results(a in interval(), b in interval()) {
        let (x, y) = (Interval::new(a.0, a.1).unwrap(), Interval::new(b.0, b.1).unwrap());
        let (px, py) = (q(a.2), q(b.2));
        prop_assert!(inside(x + y, &(&px + &py)));
        prop_assert!(inside(x - y, &(&px - &py)));
        prop_assert!(inside(x * y, &(&px * &py)));
        prop_assert!(inside(x.square(), &(&px * &px)));
        if !y.contains_zero() {
            prop_assert!(inside(x.div(&y).unwrap(), &(&px / &py)));
        } else {
            prop_assert!(x.div(&y).is_err());
        }
    }

    #[test]
    fn sqrt_and_cbrt_bracket_the_root(lo in 0.0f64..1e6, w in 0.0f64..1e6, t in 0.0f64..=1.0) {
        let x = Interval::new(lo, lo + w).unwrap();
        let p = q(lo + t * w);
        let s = x.sqrt().unwrap();
        prop_assert!(q(s.lo) * q(s.lo) <= p && p <= q(s.hi) * q(s.hi));
        let c = x.cbrt();
        prop_assert!(q(c.lo) * q(c.lo) * q(c.lo) <= p && p <= q(c.hi) * q(c.hi) * q(c.hi));
    }

    #[test]
    fn radicals_solve_the_quartic(e in -7.0f64..7.0) {
        let g = 10f64.powf(e);
        let s = solve_quartic(g).unwrap();
        prop_assert!(s.omega_minus < s.omega_plus && s.omega_plus < 0.0);
        prop_assert!(s.first_discriminant < 0.0);
        let r = s.residuals;
        prop_assert!(r.resolvent.max(r.omega_minus).max(r.omega_plus) < 1e-10, "{r:?}");
    }

    #[test]
    fn critical_points_extremise_the_branches(g in pos(), s in pos(), gm in -10.0f64..10.0) {
        let p = PhysicalParams::new(g, s, gm).unwrap();
        let cps = critical_points(&p).unwrap();
        prop_assert_eq!(cps.len(), 2);
        for cp in &cps {
            prop_assert!(cp.validate(&p).is_ok());
            let (cplus, cminus) = wave_speed_branches(&p, cp.omega).unwrap();
            let on = if cp.branch == Branch::Plus { cplus } else { cminus };
            prop_assert!(rel(on, cp.c_star) < 1e-7, "{on} vs {}", cp.c_star);
            let slack = 1e-12 * cp.c_star.abs();
            for d in [0.9, 1.1] {
                let (a, b) = wave_speed_branches(&p, cp.omega * d).unwrap();
                match cp.branch {
                    Branch::Plus => prop_assert!(a <= cp.c_star + slack, "{a} > {}", cp.c_star),
                    Branch::Minus => prop_assert!(b >= cp.c_star - slack, "{b} < {}", cp.c_star),
                }
            }
        }
    }

    #[test]
    fn critical_velocities_are_scale_invariant(g in pos(), s in pos(), gm in prop_oneof![-10.0f64..-0.1, 0.1f64..10.0]) {
        let p = PhysicalParams::new(g, s, gm).unwrap();
        let (nd, sc) = nondimensionalize(&p).unwrap();
        let unit = PhysicalParams::nondimensional(nd.v).unwrap();
        let mut mapped: Vec<f64> = critical_velocities(&unit)
            .unwrap()
            .into_iter()
            .map(|c| sc.velocity_from_nondim(c))
            .collect();
        mapped.sort_by(f64::total_cmp);
        let direct = critical_velocities(&p).unwrap();
        for (a, b) in mapped.iter().zip(&direct) {
            prop_assert!(rel(*a, *b) < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn hilbert_identities(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..20)) {
        let grid = PeriodicGrid::new(64, 5.0).unwrap();
        let f = field(grid, &coeffs);
        // H² = −1 on mean-free fields, |D| = H∂
        let hh = hilbert(&hilbert(&f));
        prop_assert!(hh.add(&f).unwrap().max_abs() < 1e-12);
        let hd = hilbert(&d_alpha(&f));
        prop_assert!(hd.sub(&abs_d(&f)).unwrap().max_abs() < 1e-11);
    }

    #[test]
    fn residual_preserves_evenness(coeffs in prop::collection::vec(-1.0f64..1.0, 1..12), c in 0.5f64..1.5) {
        let grid = PeriodicGrid::new(64, 8.0 * PI).unwrap();
        let even: Vec<(f64, f64)> = coeffs.iter().map(|a| (0.05 * a, 0.0)).collect();
        let u = field(grid, &even);
        let p = PhysicalParams::new(1.0, 1.0, 1.0).unwrap();
        let r = babenko_residual(&u, c, &p).unwrap();
        prop_assert!(r.odd_part().max_abs() < 1e-13 * r.max_abs().max(1.0));
    }

    #[test]
    fn frechet_is_linear(coeffs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..12), k in -3.0f64..3.0) {
        let grid = PeriodicGrid::new(64, 8.0 * PI).unwrap();
        let small: Vec<(f64, f64)> = coeffs.iter().map(|(a, b)| (0.05 * a, 0.05 * b)).collect();
        let u = field(grid, &small);
        let v = field(grid, &coeffs);
        let w = field(grid, &coeffs.iter().rev().copied().collect::<Vec<_>>());
        let p = PhysicalParams::new(1.0, 0.7, -0.4).unwrap();
        let l = |x: &RealField| babenko_frechet(&u, 1.1, &p, x).unwrap();
        let lhs = l(&v.add(&w.scale(k)).unwrap());
        let rhs = l(&v).add(&l(&w).scale(k)).unwrap();
        prop_assert!(l2(&lhs.sub(&rhs).unwrap()) <= 1e-12 * l2(&lhs).max(1.0));
    }
}
