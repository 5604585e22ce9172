//! Verified analysis of the focusing indicator
//! `f(V) = (3/2)V|ω̃+|³ − 1` of the critical frequency closer to the origin.
//!
//! `f > 0` means both critical points are focusing; the unique root `V*`
//! separates the two-family regime from the one-family regime.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::newton::{interval_newton, NewtonConfig, RootEnclosure};
use super::{Dual, Interval};
use crate::Result;

/// Published bracket for the critical parameter.
pub const VSTAR_BRACKET: (f64, f64) = (0.110335, 0.110336);
/// Search domain for the root.
pub const VSTAR_SEARCH: (f64, f64) = (1e-7, 1e7);

/// Arithmetic shared by plain intervals and interval duals.
trait Enclosure:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn cst(x: Interval) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn sqrt(&self) -> Result<Self>;
    fn cbrt(&self) -> Result<Self>;
    fn square(&self) -> Self;
    fn powi(&self, n: u32) -> Self;
}

impl Enclosure for Interval {
    fn cst(x: Interval) -> Self {
        x
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        Interval::div(self, rhs)
    }
    fn sqrt(&self) -> Result<Self> {
        Interval::sqrt(self)
    }
    fn cbrt(&self) -> Result<Self> {
        Ok(Interval::cbrt(self))
    }
    fn square(&self) -> Self {
        Interval::square(self)
    }
    fn powi(&self, n: u32) -> Self {
        Interval::powi(self, n)
    }
}

impl Enclosure for Dual {
    fn cst(x: Interval) -> Self {
        Dual::constant(x)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        Dual::div(self, rhs)
    }
    fn sqrt(&self) -> Result<Self> {
        Dual::sqrt(self)
    }
    fn cbrt(&self) -> Result<Self> {
        Dual::cbrt(self)
    }
    fn square(&self) -> Self {
        Dual::square(self)
    }
    fn powi(&self, n: u32) -> Self {
        Dual::powi(self, n)
    }
}

fn k<T: Enclosure>(x: f64) -> T {
    T::cst(Interval::point(x))
}

fn ratio<T: Enclosure>(num: f64, den: f64) -> Result<T> {
    Ok(T::cst(Interval::point(num).div(&Interval::point(den))?))
}

/// `(ω̃+, f)` for `V`, composed from the resolvent-cubic radicals.
fn pipeline<T: Enclosure>(v: T) -> Result<(T, T)> {
    let g = k::<T>(1.0).div(&v)?;
    let two_five_thirds = T::cst(Interval::point(32.0).cbrt());
    let root3 = T::cst(Interval::point(3.0).sqrt()?);

    let g2 = g.square();
    let inner = k::<T>(27.0) * g2.square() + k::<T>(64.0) * g.powi(5);
    let z0 = k::<T>(32.0) * g.powi(3) + k::<T>(27.0) * g2 + k::<T>(3.0) * root3 * inner.sqrt()?;
    let z1 = (two_five_thirds * g).div(&z0.cbrt()?)?;
    // (z1 − 1)²/z1 = z1 + 1/z1 − 2
    let excess = (z1 - k(1.0)).square().div(&z1)?;
    let y0 = ratio::<T>(2.0, 3.0)? * g * (k::<T>(3.0) + excess);
    let s = (k::<T>(2.0) * y0).sqrt()?;
    let radicand = -(ratio::<T>(4.0, 3.0)? * g * excess) + (k::<T>(4.0) * g).div(&s)?;
    let omega_plus = (-s + radicand.sqrt()?) * k(0.5);
    let f = -(k::<T>(1.5) * v * omega_plus.powi(3)) - k(1.0);
    Ok((omega_plus, f))
}

/// Enclosure of `f(V)` over every point of `v`.
pub fn f_of_v(v: Interval) -> Result<Interval> {
    Ok(pipeline(v)?.1)
}

/// Enclosure of `f′(V)` over `v`.
pub fn f_prime_of_v(v: Interval) -> Result<Interval> {
    Ok(pipeline(Dual::variable(v))?.1.deriv)
}

/// Enclosure of `ω̃+(V)`.
pub fn omega_plus_of_v(v: Interval) -> Result<Interval> {
    Ok(pipeline(v)?.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VStar {
    pub lo: f64,
    pub hi: f64,
    pub unique: bool,
    pub iterations: usize,
    /// Number of root enclosures found on the search domain.
    pub roots_found: usize,
    /// Image of the enclosure under `f`; must contain zero.
    pub f_lo: f64,
    pub f_hi: f64,
}

impl VStar {
    pub fn inside_published_bracket(&self) -> bool {
        self.roots_found == 1
            && self.unique
            && self.lo >= VSTAR_BRACKET.0
            && self.hi <= VSTAR_BRACKET.1
    }
}

/// All root enclosures of `f` on `search`.
pub fn f_roots(search: Interval, width_target: f64) -> Vec<RootEnclosure> {
    interval_newton(
        f_of_v,
        f_prime_of_v,
        search,
        NewtonConfig { width_target, max_iterations: 200_000 },
    )
}

/// Certified enclosure of the critical parameter `V*`.
pub fn vstar(width_target: f64) -> Result<VStar> {
    let search = Interval::new(VSTAR_SEARCH.0, VSTAR_SEARCH.1)?;
    let roots = f_roots(search, width_target);
    let roots_found = roots.len();
    let first = roots
        .into_iter()
        .next()
        .ok_or_else(|| crate::Error::Domain("no root of f on the search domain".into()))?;
    let image = f_of_v(first.interval)?;
    Ok(VStar {
        lo: first.interval.lo,
        hi: first.interval.hi,
        unique: first.unique && first.contracted,
        iterations: first.iterations,
        roots_found,
        f_lo: image.lo,
        f_hi: image.hi,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub v: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub omega_lo: f64,
    pub omega_hi: f64,
    /// `f` has the sign predicted for this tail.
    pub sign_ok: bool,
    /// The enclosure of `ω̃+` lies strictly inside the asymptotic bracket.
    pub bracket_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn signs_ok(&self) -> bool {
        self.checks.iter().all(|c| c.sign_ok)
    }

    pub fn brackets_ok(&self) -> bool {
        self.checks.iter().all(|c| c.bracket_ok)
    }

    /// Values of `V` where `f` has the wrong sign.
    pub fn sign_failures(&self) -> Vec<f64> {
        self.checks.iter().filter(|c| !c.sign_ok).map(|c| c.v).collect()
    }

    /// Values of `V` where the `ω̃+` enclosure escapes the quoted bracket.
    pub fn bracket_failures(&self) -> Vec<f64> {
        self.checks.iter().filter(|c| !c.bracket_ok).map(|c| c.v).collect()
    }
}

pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

/// Quoted bracket on `ω̃+` in the tails `V > 10⁶` and `V < 10⁻⁶`.
///
/// The `V > 10⁶` bracket is reported but does not hold: there
/// `ω̃+ = −G/2 + O(G^{5/3})`, well inside `(−G^{1/3}/√3, 0)`.
fn asymptotic_bracket(v: f64) -> Result<Interval> {
    let g = Interval::point(1.0).div(&Interval::point(v))?;
    if v >= 1.0 {
        // −(2^{1/3}/√3)·G^{1/3} < ω̃+ < −G^{1/3}/√3
        let c = g.cbrt().div(&Interval::point(3.0).sqrt()?)?;
        let lo = -(Interval::point(2.0).cbrt() * c);
        Ok(Interval { lo: lo.hi, hi: (-c).lo })
    } else {
        // −√G < ω̃+ < −0.99√G + G^{1/4}
        let r = g.sqrt()?;
        let upper = -(r * Interval::point(0.99)) + r.sqrt()?;
        Ok(Interval { lo: (-r).hi, hi: upper.lo })
    }
}

fn check_point(v: f64, expect_positive: bool) -> Result<LemmaCheck> {
    let x = Interval::point(v);
    let (omega, f) = pipeline(x)?;
    let bracket = asymptotic_bracket(v)?;
    Ok(LemmaCheck {
        v,
        f_lo: f.lo,
        f_hi: f.hi,
        omega_lo: omega.lo,
        omega_hi: omega.hi,
        sign_ok: if expect_positive { f.is_positive() } else { f.is_negative() },
        bracket_ok: omega.is_interior_of(&bracket),
    })
}

/// Sign of `f` and the `ω̃+` brackets on both tails: `V ∈ [10⁶, 10⁷]` gives
/// `f < 0`, `V ∈ [10⁻⁷, 10⁻⁶]` gives `f > 0`.
pub fn verify_asymptotic_lemmas(samples_per_tail: usize) -> Result<LemmaReport> {
    let mut checks = Vec::new();
    let mut large = vec![1e6, 1e7];
    large.extend(log_spaced(1e6, 1e7, samples_per_tail));
    let mut small = vec![1e-7, 1e-6];
    small.extend(log_spaced(1e-7, 1e-6, samples_per_tail));
    for v in large {
        checks.push(check_point(v, false)?);
    }
    for v in small {
        checks.push(check_point(v, true)?);
    }
    Ok(LemmaReport { checks })
}
