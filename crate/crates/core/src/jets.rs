//! Third-order jets in the orbit parameter `t`.
//!
//! A [`Jet3`] carries a value together with its first three derivatives.
//! Arithmetic follows the Leibniz rule truncated at order three, so a
//! product or quotient of exact jets is again exact. [`Dual`] is the
//! first-order counterpart used to differentiate trace sums once more.

use core::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Denominators with magnitude below this are rejected by [`Jet3::checked_div`].
pub const DIVISION_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet3 {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Jet3 {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet3 { v, d1, d2, d3 }
    }

    pub const fn constant(c: f64) -> Self {
        Jet3::new(c, 0.0, 0.0, 0.0)
    }

    pub const fn zero() -> Self {
        Jet3::constant(0.0)
    }

    pub const fn one() -> Self {
        Jet3::constant(1.0)
    }

    /// The jet of the identity function at `t`.
    pub const fn variable(t: f64) -> Self {
        Jet3::new(t, 1.0, 0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d1.is_finite() && self.d2.is_finite() && self.d3.is_finite()
    }

    pub fn scale(self, c: f64) -> Self {
        Jet3::new(c * self.v, c * self.d1, c * self.d2, c * self.d3)
    }

    /// Quotient `self / rhs`, obtained by solving `self = q · rhs` order by order.
    pub fn checked_div(self, rhs: Jet3) -> Result<Jet3> {
        let b = rhs;
        if !(b.v.abs() >= DIVISION_FLOOR) {
            return Err(Error::DivisionByZero);
        }
        let q0 = self.v / b.v;
        let q1 = (self.d1 - q0 * b.d1) / b.v;
        let q2 = (self.d2 - 2.0 * q1 * b.d1 - q0 * b.d2) / b.v;
        let q3 = (self.d3 - 3.0 * q2 * b.d1 - 3.0 * q1 * b.d2 - q0 * b.d3) / b.v;
        Ok(Jet3::new(q0, q1, q2, q3))
    }

    /// `1 / self`.
    pub fn recip(self) -> Result<Jet3> {
        Jet3::one().checked_div(self)
    }

    /// First-order view: value and first derivative.
    pub fn dual(self) -> Dual {
        Dual::new(self.v, self.d1)
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, b: Jet3) -> Jet3 {
        Jet3::new(self.v + b.v, self.d1 + b.d1, self.d2 + b.d2, self.d3 + b.d3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, b: Jet3) -> Jet3 {
        Jet3::new(self.v - b.v, self.d1 - b.d1, self.d2 - b.d2, self.d3 - b.d3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        self.scale(-1.0)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    fn mul(self, b: Jet3) -> Jet3 {
        let a = self;
        Jet3::new(
            a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3,
        )
    }
}

impl Mul<f64> for Jet3 {
    type Output = Jet3;
    fn mul(self, c: f64) -> Jet3 {
        self.scale(c)
    }
}

/// A value with a single derivative.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub const fn new(v: f64, d: f64) -> Self {
        Dual { v, d }
    }

    pub const fn constant(c: f64) -> Self {
        Dual::new(c, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.d.is_finite()
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, b: Dual) -> Dual {
        let q = self.v / b.v;
        Dual::new(q, (self.d - q * b.d) / b.v)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, b: Dual) -> Dual {
        Dual::new(self.v + b.v, self.d + b.d)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, b: Dual) -> Dual {
        Dual::new(self.v - b.v, self.d - b.d)
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, b: Dual) -> Dual {
        Dual::new(self.v * b.v, self.d * b.v + self.v * b.d)
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    fn mul(self, c: f64) -> Dual {
        Dual::new(self.v * c, self.d * c)
    }
}
