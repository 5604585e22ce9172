//! Forward-mode derivatives with interval coefficients.

use std::ops::{Add, Mul, Neg, Sub};

use super::Interval;
use crate::Result;

/// `value + deriv·dx` with both parts enclosed by intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub value: Interval,
    pub deriv: Interval,
}

impl Dual {
    pub fn variable(x: Interval) -> Self {
        Self { value: x, deriv: Interval::point(1.0) }
    }

    pub fn constant(x: Interval) -> Self {
        Self { value: x, deriv: Interval::point(0.0) }
    }

    pub fn div(&self, rhs: &Dual) -> Result<Dual> {
        let value = self.value.div(&rhs.value)?;
        // (u/v)' = (u' − (u/v)·v') / v
        let deriv = (self.deriv - value * rhs.deriv).div(&rhs.value)?;
        Ok(Dual { value, deriv })
    }

    pub fn recip(&self) -> Result<Dual> {
        Dual::constant(Interval::point(1.0)).div(self)
    }

    pub fn sqrt(&self) -> Result<Dual> {
        let value = self.value.sqrt()?;
        let deriv = self.deriv.div(&(value * 2.0))?;
        Ok(Dual { value, deriv })
    }

    pub fn cbrt(&self) -> Result<Dual> {
        let value = self.value.cbrt();
        let deriv = self.deriv.div(&(value.square() * 3.0))?;
        Ok(Dual { value, deriv })
    }

    pub fn square(&self) -> Dual {
        Dual { value: self.value.square(), deriv: self.value * self.deriv * 2.0 }
    }

    pub fn powi(&self, n: u32) -> Dual {
        match n {
            0 => Dual::constant(Interval::point(1.0)),
            1 => *self,
            _ => {
                let value = self.value.powi(n);
                let deriv = self.value.powi(n - 1) * self.deriv * (n as f64);
                Dual { value, deriv }
            }
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { value: -self.value, deriv: -self.deriv }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, rhs: Dual) -> Dual {
        Dual { value: self.value + rhs.value, deriv: self.deriv + rhs.deriv }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, rhs: Dual) -> Dual {
        Dual { value: self.value - rhs.value, deriv: self.deriv - rhs.deriv }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        Dual {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

impl Mul<Interval> for Dual {
    type Output = Dual;
    fn mul(self, rhs: Interval) -> Dual {
        Dual { value: self.value * rhs, deriv: self.deriv * rhs }
    }
}

impl Add<Interval> for Dual {
    type Output = Dual;
    fn add(self, rhs: Interval) -> Dual {
        Dual { value: self.value + rhs, deriv: self.deriv }
    }
}
