use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Closed interval `[lo, hi]` of reals with outward-rounded arithmetic.
///
/// Every native operation is followed by an error-free check of the
/// rounding error (TwoSum for addition, FMA for products, quotients and
/// square roots); an endpoint is stepped to the neighbouring float only when
/// the rounded result is not exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

const TINY: f64 = 1e-290;

fn clamp_down(x: f64) -> f64 {
    if x == f64::INFINITY { f64::MAX } else { x }
}

fn clamp_up(x: f64) -> f64 {
    if x == f64::NEG_INFINITY { f64::MIN } else { x }
}

/// `(round_down(a + b), round_up(a + b))`
fn add_bounds(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (clamp_down(s), clamp_up(s));
    }
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    if err > 0.0 {
        (s, s.next_up())
    } else if err < 0.0 {
        (s.next_down(), s)
    } else {
        (s, s)
    }
}

fn mul_bounds(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (clamp_down(p), clamp_up(p));
    }
    if p.abs() < TINY {
        if a == 0.0 || b == 0.0 {
            return (0.0, 0.0);
        }
        return (p.next_down(), p.next_up());
    }
    let err = a.mul_add(b, -p);
    if err > 0.0 {
        (p, p.next_up())
    } else if err < 0.0 {
        (p.next_down(), p)
    } else {
        (p, p)
    }
}

fn div_bounds(a: f64, b: f64) -> (f64, f64) {
    let q = a / b;
    if !q.is_finite() {
        return (clamp_down(q), clamp_up(q));
    }
    if q.abs() < TINY || b.abs() < TINY {
        if a == 0.0 {
            return (0.0, 0.0);
        }
        return (q.next_down(), q.next_up());
    }
    // a − q·b carries the sign of the rounding error times sign(b)
    let rem = (-q).mul_add(b, a);
    let err = if b > 0.0 { rem } else { -rem };
    if err > 0.0 {
        (q, q.next_up())
    } else if err < 0.0 {
        (q.next_down(), q)
    } else {
        (q, q)
    }
}

fn sqrt_bounds(x: f64) -> (f64, f64) {
    let r = x.sqrt();
    if x == 0.0 || !r.is_finite() {
        return (r, r);
    }
    if x < TINY {
        return (r.next_down().max(0.0), r.next_up());
    }
    let err = (-r).mul_add(r, x);
    if err > 0.0 {
        (r, r.next_up())
    } else if err < 0.0 {
        (r.next_down(), r)
    } else {
        (r, r)
    }
}

/// Lower and upper bounds on the real cube root of `x ≥ 0`, checked by cubing.
fn cbrt_bounds_nonneg(x: f64) -> (f64, f64) {
    if x == 0.0 || x == f64::INFINITY {
        return (x, x);
    }
    let r = x.cbrt();
    let cube = |y: f64| Interval::point(y).powi(3);
    let mut lo = r;
    while cube(lo).hi > x {
        lo = lo.next_down();
    }
    let mut hi = r;
    while cube(hi).lo < x {
        hi = hi.next_up();
    }
    (lo, hi)
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn whole() -> Self {
        Self { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn is_whole_line(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }

    pub fn width(&self) -> f64 {
        let (_, up) = add_bounds(self.hi, -self.lo);
        up
    }

    pub fn mid(&self) -> f64 {
        if self.lo.is_finite() && self.hi.is_finite() {
            let m = 0.5 * self.lo + 0.5 * self.hi;
            m.clamp(self.lo, self.hi)
        } else if self.lo.is_finite() {
            self.lo.max(0.0) * 2.0 + 1.0
        } else if self.hi.is_finite() {
            self.hi.min(0.0) * 2.0 - 1.0
        } else {
            0.0
        }
    }

    /// Split point for bisection: geometric for wide positive intervals.
    pub fn split_point(&self) -> f64 {
        if self.lo > 0.0 && self.hi / self.lo > 4.0 {
            (self.lo.sqrt() * self.hi.sqrt()).clamp(self.lo, self.hi)
        } else {
            self.mid()
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_interior_of(&self, other: &Interval) -> bool {
        other.lo < self.lo && self.hi < other.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0.0
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            -*self
        } else {
            Interval { lo: 0.0, hi: (-self.lo).max(self.hi) }
        }
    }

    pub fn square(&self) -> Interval {
        let a = self.abs();
        let (lo, _) = mul_bounds(a.lo, a.lo);
        let (_, hi) = mul_bounds(a.hi, a.hi);
        Interval { lo, hi }
    }

    pub fn powi(&self, n: u32) -> Interval {
        match n {
            0 => Interval::point(1.0),
            1 => *self,
            _ if n % 2 == 0 => self.square().powi(n / 2),
            _ => *self * self.powi(n - 1),
        }
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::point(1.0).div(self)
    }

    pub fn div(&self, rhs: &Interval) -> Result<Interval> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZeroInterval { lo: rhs.lo, hi: rhs.hi });
        }
        let cands = [
            div_bounds(self.lo, rhs.lo),
            div_bounds(self.lo, rhs.hi),
            div_bounds(self.hi, rhs.lo),
            div_bounds(self.hi, rhs.hi),
        ];
        Ok(Interval {
            lo: cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min),
            hi: cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max),
        })
    }

    /// Square root of the nonnegative part; errors only when `hi < 0`.
    pub fn sqrt(&self) -> Result<Interval> {
        if self.hi < 0.0 {
            return Err(Error::NegativeSqrt { lo: self.lo, hi: self.hi });
        }
        let (lo, _) = sqrt_bounds(self.lo.max(0.0));
        let (_, hi) = sqrt_bounds(self.hi);
        Ok(Interval { lo, hi })
    }

    pub fn cbrt(&self) -> Interval {
        let lo = if self.lo >= 0.0 {
            cbrt_bounds_nonneg(self.lo).0
        } else {
            -cbrt_bounds_nonneg(-self.lo).1
        };
        let hi = if self.hi >= 0.0 {
            cbrt_bounds_nonneg(self.hi).1
        } else {
            -cbrt_bounds_nonneg(-self.hi).0
        };
        Interval { lo, hi }
    }

    pub fn scale(&self, k: f64) -> Interval {
        *self * Interval::point(k)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval { lo: add_bounds(self.lo, rhs.lo).0, hi: add_bounds(self.hi, rhs.hi).1 }
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        self + (-rhs)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let cands = [
            mul_bounds(self.lo, rhs.lo),
            mul_bounds(self.lo, rhs.hi),
            mul_bounds(self.hi, rhs.lo),
            mul_bounds(self.hi, rhs.hi),
        ];
        Interval {
            lo: cands.iter().map(|c| c.0).fold(f64::INFINITY, f64::min),
            hi: cands.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    fn sub(self, rhs: f64) -> Interval {
        self - Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    #[test]
    fn exact_sums_stay_tight() {
        let s = iv(1.0, 1.0) + iv(2.0, 2.0);
        assert!(s.contains(3.0));
        assert!(s.lo >= 3f64.next_down() && s.hi <= 3f64.next_up());
    }

    #[test]
    fn inexact_sum_is_outward() {
        let s = Interval::point(0.1) + Interval::point(0.2);
        assert!(s.lo < s.hi);
        assert!(s.contains(0.1 + 0.2));
    }

    #[test]
    fn sign_cases_of_product() {
        let p = iv(-1.0, 2.0) * iv(3.0, 4.0);
        assert_eq!((p.lo, p.hi), (-4.0, 8.0));
        let q = iv(-2.0, -1.0) * iv(-3.0, 5.0);
        assert_eq!((q.lo, q.hi), (-10.0, 6.0));
    }

    #[test]
    fn square_root_of_squares() {
        let r = iv(4.0, 9.0).sqrt().unwrap();
        assert_eq!((r.lo, r.hi), (2.0, 3.0));
        let t = iv(2.0, 2.0).sqrt().unwrap();
        assert!(t.lo < 2f64.sqrt() || t.hi > 2f64.sqrt());
        assert!(t.lo * t.lo <= 2.0 && t.hi * t.hi >= 2.0);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            iv(1.0, 2.0).div(&iv(-1.0, 1.0)),
            Err(Error::DivisionByZeroInterval { .. })
        ));
        assert!(matches!(iv(-2.0, -1.0).sqrt(), Err(Error::NegativeSqrt { .. })));
        // straddling zero clamps to the nonnegative part
        let r = iv(-1.0, 4.0).sqrt().unwrap();
        assert_eq!((r.lo, r.hi), (0.0, 2.0));
        assert!(Interval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn cube_roots() {
        let r = iv(8.0, 27.0).cbrt();
        assert!(r.contains(2.0) && r.contains(3.0));
        let n = iv(-27.0, -8.0).cbrt();
        assert!(n.contains(-2.0) && n.contains(-3.0));
        let c = Interval::point(32.0).cbrt();
        let cube = c.powi(3);
        assert!(cube.contains(32.0));
        assert!(c.width() <= 4.0 * f64::EPSILON * 4.0);
    }

    #[test]
    fn even_powers_are_nonnegative() {
        let p = iv(-2.0, 1.0).powi(2);
        assert_eq!((p.lo, p.hi), (0.0, 4.0));
        let q = iv(-2.0, 1.0).powi(3);
        assert!(q.contains(-8.0) && q.contains(1.0));
    }

    #[test]
    fn set_operations() {
        let a = iv(0.0, 2.0);
        let b = iv(1.0, 3.0);
        assert_eq!(a.intersect(&b), Some(iv(1.0, 2.0)));
        assert_eq!(a.hull(&b), iv(0.0, 3.0));
        assert!(iv(0.5, 1.0).is_interior_of(&a));
        assert!(!a.is_interior_of(&a));
        assert!(iv(5.0, 6.0).intersect(&a).is_none());
        assert!(Interval::whole().is_whole_line());
    }

    #[test]
    fn geometric_split_for_wide_positive_ranges() {
        let x = iv(1e-7, 1e7);
        assert!((x.split_point() - 1.0).abs() < 1e-12);
        assert_eq!(iv(1.0, 2.0).split_point(), 1.5);
    }
}
