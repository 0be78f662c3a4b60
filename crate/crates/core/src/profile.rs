//! Closed-form diagonal metric entries `p(t) = f(t)²`.

use alloc::boxed::Box;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::jets::Jet3;
use crate::table::SampleTable;

/// A positive scalar function of the orbit parameter with exact jets.
///
/// Trigonometric arguments are `omega * t + phase`. Combinators wrap an
/// inner profile; `Cheeger` is the blockwise deformation `p / (1 + s p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Constant {
        c: f64,
    },
    /// `sin²(ωt + φ)`
    SinSq {
        omega: f64,
        phase: f64,
    },
    /// `cos²(ωt + φ)`
    CosSq {
        omega: f64,
        phase: f64,
    },
    /// `e^{2at}`
    Exp2 {
        a: f64,
    },
    /// `c1² (c2 + t)^{2q}`
    PowerLaw {
        c1: f64,
        c2: f64,
        q: f64,
    },
    /// `sin(ωt + φ)`
    SinFirstPower {
        omega: f64,
        phase: f64,
    },
    /// `cos(ωt + φ)`
    CosFirstPower {
        omega: f64,
        phase: f64,
    },
    Scaled {
        factor: f64,
        inner: Box<Profile>,
    },
    Shifted {
        offset: f64,
        inner: Box<Profile>,
    },
    Squared {
        inner: Box<Profile>,
    },
    Cheeger {
        inner: Box<Profile>,
        s: f64,
    },
    /// Sampled values; derivatives by finite differences. Verify-only.
    Table {
        table: SampleTable,
    },
}

impl Profile {
    pub fn constant(c: f64) -> Self {
        Profile::Constant { c }
    }

    pub fn sin_sq(omega: f64, phase: f64) -> Self {
        Profile::SinSq { omega, phase }
    }

    pub fn cos_sq(omega: f64, phase: f64) -> Self {
        Profile::CosSq { omega, phase }
    }

    pub fn exp2(a: f64) -> Self {
        Profile::Exp2 { a }
    }

    pub fn power_law(c1: f64, c2: f64, q: f64) -> Self {
        Profile::PowerLaw { c1, c2, q }
    }

    pub fn sin(omega: f64, phase: f64) -> Self {
        Profile::SinFirstPower { omega, phase }
    }

    pub fn cos(omega: f64, phase: f64) -> Self {
        Profile::CosFirstPower { omega, phase }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Profile::Scaled { factor, inner: Box::new(self) }
    }

    pub fn shifted(self, offset: f64) -> Self {
        Profile::Shifted { offset, inner: Box::new(self) }
    }

    pub fn squared(self) -> Self {
        Profile::Squared { inner: Box::new(self) }
    }

    pub fn table(table: SampleTable) -> Self {
        Profile::Table { table }
    }

    /// Cheeger deformation by `s ≥ 0`. Nested deformations compose additively.
    pub fn cheeger(self, s: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(invalid("Cheeger parameter s must be finite and >= 0"));
        }
        Ok(match self {
            Profile::Cheeger { inner, s: s0 } => Profile::Cheeger { inner, s: s0 + s },
            other => Profile::Cheeger { inner: Box::new(other), s },
        })
    }

    /// True if the profile (or any part of it) is sampled data.
    pub fn is_sampled(&self) -> bool {
        match self {
            Profile::Table { .. } => true,
            Profile::Scaled { inner, .. }
            | Profile::Shifted { inner, .. }
            | Profile::Squared { inner }
            | Profile::Cheeger { inner, .. } => inner.is_sampled(),
            _ => false,
        }
    }

    /// True if the closed form is defined on the whole real line.
    pub fn is_entire(&self) -> bool {
        match self {
            Profile::PowerLaw { .. } | Profile::Table { .. } => false,
            Profile::Scaled { inner, .. }
            | Profile::Shifted { inner, .. }
            | Profile::Squared { inner }
            | Profile::Cheeger { inner, .. } => inner.is_entire(),
            _ => true,
        }
    }

    pub fn eval(&self, t: f64) -> Result<Jet3> {
        let jet = match self {
            Profile::Constant { c } => Jet3::constant(*c),
            Profile::SinSq { omega, phase } => {
                let u = omega * t + phase;
                let (s2, c2) = (libm::sin(2.0 * u), libm::cos(2.0 * u));
                let s = libm::sin(u);
                let w = *omega;
                Jet3::new(s * s, w * s2, 2.0 * w * w * c2, -4.0 * w * w * w * s2)
            }
            Profile::CosSq { omega, phase } => {
                let u = omega * t + phase;
                let (s2, c2) = (libm::sin(2.0 * u), libm::cos(2.0 * u));
                let c = libm::cos(u);
                let w = *omega;
                Jet3::new(c * c, -w * s2, -2.0 * w * w * c2, 4.0 * w * w * w * s2)
            }
            Profile::Exp2 { a } => {
                let e = libm::exp(2.0 * a * t);
                let k = 2.0 * a;
                Jet3::new(e, k * e, k * k * e, k * k * k * e)
            }
            Profile::PowerLaw { c1, c2, q } => {
                let x = c2 + t;
                if !(x > 0.0) {
                    return Err(Error::OutOfDomain { t, t_min: -c2, t_max: f64::INFINITY });
                }
                let e = 2.0 * q;
                let c = c1 * c1;
                let base = libm::pow(x, e - 3.0);
                let d3 = c * e * (e - 1.0) * (e - 2.0) * base;
                let d2 = c * e * (e - 1.0) * base * x;
                let d1 = c * e * base * x * x;
                let v = c * base * x * x * x;
                Jet3::new(v, d1, d2, d3)
            }
            Profile::SinFirstPower { omega, phase } => {
                let u = omega * t + phase;
                let (s, c) = (libm::sin(u), libm::cos(u));
                let w = *omega;
                Jet3::new(s, w * c, -w * w * s, -w * w * w * c)
            }
            Profile::CosFirstPower { omega, phase } => {
                let u = omega * t + phase;
                let (s, c) = (libm::sin(u), libm::cos(u));
                let w = *omega;
                Jet3::new(c, -w * s, -w * w * c, w * w * w * s)
            }
            Profile::Scaled { factor, inner } => inner.eval(t)?.scale(*factor),
            Profile::Shifted { offset, inner } => inner.eval(t)? + Jet3::constant(*offset),
            Profile::Squared { inner } => {
                let j = inner.eval(t)?;
                j * j
            }
            Profile::Cheeger { inner, s } => {
                let p = inner.eval(t)?;
                p.checked_div(Jet3::one() + p.scale(*s))?
            }
            Profile::Table { table } => {
                let d = table.derivatives(t)?;
                Jet3::new(d[0], d[1], d[2], d[3])
            }
        };
        Ok(jet)
    }
}
