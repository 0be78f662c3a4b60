//! Real polynomials in `x = cos²t` whose roots locate special orbits.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Coefficients in ascending powers: `c[0] + c[1] x + c[2] x² + …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

/// Two roots closer than this are reported once.
const MERGE_TOL: f64 = 1e-12;

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From coefficients in descending powers, the way they are usually printed.
    pub fn from_descending(c: &[f64]) -> Self {
        Polynomial::new(c.iter().rev().copied().collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::new(vec![0.0]);
        }
        Polynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect())
    }

    fn magnitude_at(&self, x: f64) -> f64 {
        let ax = x.abs().max(1.0);
        let mut pow = 1.0;
        let mut m: f64 = 0.0;
        for &c in &self.coeffs {
            m = m.max(c.abs() * pow);
            pow *= ax;
        }
        m
    }

    /// Real roots in the open interval `(lo, hi)`, ascending, with multiple
    /// roots reported once.
    ///
    /// Critical points split the interval into monotone pieces, each holding
    /// at most one simple root; a critical point where the polynomial
    /// vanishes to rounding is a multiple root.
    pub fn roots_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        match self.degree() {
            0 => return out,
            1 => {
                let x = -self.coeffs[0] / self.coeffs[1];
                if x > lo && x < hi {
                    out.push(x);
                }
                return out;
            }
            _ => {}
        }
        let crit = self.derivative().roots_in(lo, hi);
        let mut knots = Vec::with_capacity(crit.len() + 2);
        knots.push(lo);
        knots.extend_from_slice(&crit);
        knots.push(hi);
        for w in knots.windows(2) {
            let (mut a, mut b) = (w[0], w[1]);
            let (fa, fb) = (self.eval(a), self.eval(b));
            if fa * fb < 0.0 {
                let sa = fa.signum();
                loop {
                    let m = 0.5 * (a + b);
                    if m <= a || m >= b {
                        break;
                    }
                    if self.eval(m).signum() == sa {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                out.push(if self.eval(a).abs() <= self.eval(b).abs() { a } else { b });
            }
        }
        for &c in &crit {
            if self.eval(c).abs() <= 1e-12 * self.magnitude_at(c) {
                out.push(c);
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup_by(|x, y| (*x - *y).abs() < MERGE_TOL);
        out
    }
}

/// Tubes around a totally geodesic `CP^{n-p}`: `4(n+1)x² − 2(n+2p+3)x + (2p+1)`.
pub fn cpn_quadratic(n: u32, p: u32) -> Polynomial {
    let (n, p) = (f64::from(n), f64::from(p));
    Polynomial::from_descending(&[4.0 * (n + 1.0), -2.0 * (n + 2.0 * p + 3.0), 2.0 * p + 1.0])
}

/// Tubes around quaternionic hyperplanes: `8(n+2)x² − 4(n+5)x + 3`.
pub fn hpn_quadratic(n: u32) -> Polynomial {
    let n = f64::from(n);
    Polynomial::from_descending(&[8.0 * (n + 2.0), -4.0 * (n + 5.0), 3.0])
}

/// Biharmonic and minimal orbits of the complex quadric: `(nx − 1)(2x − 1)`.
pub fn quadric_quadratic(n: u32) -> Polynomial {
    let n = f64::from(n);
    Polynomial::from_descending(&[2.0 * n, -(n + 2.0), 1.0])
}

/// Proper r-harmonic orbits of the quadric: `rnx³ + (n−2−r(n+1))x² + (r+2)x − 1`.
pub fn quadric_cubic(n: u32, r: u32) -> Polynomial {
    let (n, r) = (f64::from(n), f64::from(r));
    Polynomial::from_descending(&[r * n, n - 2.0 - r * (n + 1.0), r + 2.0, -1.0])
}

/// Proper r-harmonic orbits in `HP^n`: `16a₄x⁴ + 8a₃x³ + 24a₂x² − 24a₁x + 18`.
pub fn hpn_quartic(n: u32, r: u32) -> Polynomial {
    let (n, r) = (f64::from(n), f64::from(r));
    let a4 = (2.0 * n * n + 11.0 * n + 5.0) * r - 6.0 * (n - 1.0);
    let a3 = -(4.0 * n * n + 37.0 * n + 31.0) * r + 2.0 * (2.0 * n + 13.0) * (n - 1.0);
    let a2 = 5.0 * (n + 2.0) * r - 3.0 * (n - 2.0);
    let a1 = 3.0 * r + n + 2.0;
    Polynomial::from_descending(&[16.0 * a4, 8.0 * a3, 24.0 * a2, -24.0 * a1, 18.0])
}
