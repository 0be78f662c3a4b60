//! Diagonal cohomogeneity-one metrics and their trace invariants.
//!
//! A [`PtFamily`] stores the diagonal entries `pᵢ(t) = fᵢ(t)²` of the
//! endomorphism `P_t` together with their multiplicities. Every residual in
//! the crate is built from block sums of the logarithmic derivatives
//! `aᵢ = ṗᵢ/pᵢ`, `bᵢ = p̈ᵢ/pᵢ` and `cᵢ = p⃛ᵢ/pᵢ`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::jets::{Dual, Jet3};
use crate::profile::Profile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub profile: Profile,
    pub multiplicity: u32,
}

impl Block {
    pub fn new(profile: Profile, multiplicity: u32) -> Self {
        Block { profile, multiplicity }
    }
}

/// Open interval of the orbit parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub t_min: f64,
    pub t_max: f64,
}

impl Domain {
    pub fn new(t_min: f64, t_max: f64) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(invalid("domain must be a finite nonempty interval"));
        }
        Ok(Domain { t_min, t_max })
    }

    pub fn length(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn contains(&self, t: f64) -> bool {
        t > self.t_min && t < self.t_max
    }

    pub fn check(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfDomain { t, t_min: self.t_min, t_max: self.t_max })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Real(f64),
}

impl Param {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Param::Int(i) => i as f64,
            Param::Real(x) => x,
        }
    }
}

/// Reporting substitution for families whose equations are polynomial in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Substitution {
    /// `x = cos²t`
    CosSquared,
}

impl Substitution {
    pub fn apply(&self, t: f64) -> f64 {
        match self {
            Substitution::CosSquared => {
                let c = libm::cos(t);
                c * c
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PtFamily {
    pub name: String,
    pub blocks: Vec<Block>,
    pub domain: Domain,
    #[serde(default)]
    pub params: BTreeMap<String, Param>,
    #[serde(default)]
    pub substitution: Option<Substitution>,
    /// Center `c` of an ambient isometry identifying the orbits at `t` and
    /// `2c - t`; root scans report one orbit per mirrored pair.
    #[serde(default)]
    pub mirror: Option<f64>,
}

/// Points used to check positivity of every block on the domain.
const POSITIVITY_SAMPLES: usize = 257;

impl PtFamily {
    pub fn new(name: impl Into<String>, blocks: Vec<Block>, domain: Domain) -> Result<Self> {
        let fam = PtFamily {
            name: name.into(),
            blocks,
            domain,
            params: BTreeMap::new(),
            substitution: None,
            mirror: None,
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn with_param(mut self, key: &str, value: Param) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    pub fn with_substitution(mut self, s: Substitution) -> Self {
        self.substitution = Some(s);
        self
    }

    pub fn with_mirror(mut self, center: f64) -> Self {
        self.mirror = Some(center);
        self
    }

    /// Checks multiplicities, the domain, and positivity of every block on
    /// a uniform interior sample.
    pub fn validate(&self) -> Result<()> {
        Domain::new(self.domain.t_min, self.domain.t_max)?;
        if self.blocks.is_empty() {
            return Err(invalid("family has no blocks"));
        }
        if self.blocks.iter().any(|b| b.multiplicity == 0) {
            return Err(invalid("block multiplicity must be >= 1"));
        }
        let Domain { t_min, t_max } = self.domain;
        let margin = (t_max - t_min) * 1e-6;
        for i in 0..POSITIVITY_SAMPLES {
            let s = i as f64 / (POSITIVITY_SAMPLES - 1) as f64;
            let t = (t_min + margin) + s * (t_max - t_min - 2.0 * margin);
            for (k, b) in self.blocks.iter().enumerate() {
                let v = b.profile.eval(t)?.v;
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::NonPositiveProfile { block: k, t, value: v });
                }
            }
        }
        Ok(())
    }

    /// Dimension of the principal orbit.
    pub fn orbit_dim(&self) -> u32 {
        self.blocks.iter().map(|b| b.multiplicity).sum()
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).map(Param::as_f64)
    }

    /// Verify-only families contain sampled profiles.
    pub fn is_verify_only(&self) -> bool {
        self.blocks.iter().any(|b| b.profile.is_sampled())
    }

    /// True when every profile extends analytically to the whole real line,
    /// so that mixed traces may be evaluated at `r` outside the domain.
    pub fn extends_periodically(&self) -> bool {
        self.blocks.iter().all(|b| b.profile.is_entire())
    }

    /// Same metric with every block split into multiplicity-one copies.
    pub fn split_into_singletons(&self) -> PtFamily {
        let blocks = self
            .blocks
            .iter()
            .flat_map(|b| (0..b.multiplicity).map(move |_| Block::new(b.profile.clone(), 1)))
            .collect();
        PtFamily { blocks, ..self.clone() }
    }

    /// Jets of every block at `t`, checking the domain and positivity.
    pub fn block_jets(&self, t: f64) -> Result<Vec<(Jet3, f64)>> {
        self.domain.check(t)?;
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let j = b.profile.eval(t)?;
                if !(j.v > 0.0) || !j.is_finite() {
                    return Err(Error::NonPositiveProfile { block: k, t, value: j.v });
                }
                Ok((j, f64::from(b.multiplicity)))
            })
            .collect()
    }

    pub fn trace_invariants(&self, t: f64) -> Result<TraceInvariants> {
        let mut out = TraceInvariants::default();
        for (j, m) in self.block_jets(t)? {
            let a = j.d1 / j.v;
            let b = j.d2 / j.v;
            let c = j.d3 / j.v;
            out.tr_a += m * a;
            out.tr_a2 += m * a * a;
            out.tr_b += m * b;
            out.tr_c += m * c;
            out.tr_a3 += m * a * a * a;
            out.tr_ab += m * a * b;
        }
        Ok(out)
    }

    /// Trace sums together with their `t`-derivatives.
    pub fn trace_slopes(&self, t: f64) -> Result<TraceSlopes> {
        let mut out = TraceSlopes::default();
        for (j, m) in self.block_jets(t)? {
            let (a, b, c) = (j.d1 / j.v, j.d2 / j.v, j.d3 / j.v);
            let a = Dual::new(a, b - a * a);
            let b = Dual::new(b, c - a.v * b);
            out.tr_a = out.tr_a + a * m;
            out.tr_a2 = out.tr_a2 + a * a * m;
            out.tr_b = out.tr_b + b * m;
            out.tr_a3 = out.tr_a3 + a * a * a * m;
            out.tr_ab = out.tr_ab + a * b * m;
        }
        Ok(out)
    }

    /// `trace P_t⁻¹ Ṗ_{r}` and `trace P_t⁻¹ P̈_{r}` for a point `r` on the
    /// normal geodesic.
    pub fn mixed_traces(&self, t: f64, r: f64) -> Result<MixedTraces> {
        let at_t = self.block_jets(t)?;
        if !self.extends_periodically() {
            self.domain.check(r)?;
        }
        let mut out = MixedTraces::default();
        for ((jt, m), b) in at_t.iter().zip(&self.blocks) {
            let jr = b.profile.eval(r)?;
            out.tr_ar += m * jr.d1 / jt.v;
            out.tr_br += m * jr.d2 / jt.v;
        }
        Ok(out)
    }

    /// Ricci curvature in the normal direction, `¼ (trace (P⁻¹Ṗ)² − 2 trace P⁻¹P̈)`.
    pub fn ricci_normal(&self, t: f64) -> Result<f64> {
        let tr = self.trace_invariants(t)?;
        Ok(0.25 * (tr.tr_a2 - 2.0 * tr.tr_b))
    }
}

/// Block sums at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TraceInvariants {
    /// `Σ mᵢ ṗᵢ/pᵢ`
    pub tr_a: f64,
    /// `Σ mᵢ (ṗᵢ/pᵢ)²`
    pub tr_a2: f64,
    /// `Σ mᵢ p̈ᵢ/pᵢ`
    pub tr_b: f64,
    /// `Σ mᵢ p⃛ᵢ/pᵢ`
    pub tr_c: f64,
    /// `Σ mᵢ (ṗᵢ/pᵢ)³`
    pub tr_a3: f64,
    /// `Σ mᵢ (ṗᵢ/pᵢ)(p̈ᵢ/pᵢ)`
    pub tr_ab: f64,
}

impl TraceInvariants {
    /// Trace of the shape operator.
    pub fn alpha(&self) -> f64 {
        -0.5 * self.tr_a
    }

    /// Squared norm of the shape operator.
    pub fn beta(&self) -> f64 {
        0.25 * self.tr_a2
    }
}

/// Trace sums carried with first derivatives in `t`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TraceSlopes {
    pub tr_a: Dual,
    pub tr_a2: Dual,
    pub tr_b: Dual,
    pub tr_a3: Dual,
    pub tr_ab: Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MixedTraces {
    pub tr_ar: f64,
    pub tr_br: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use core::f64::consts::PI;

    #[test]
    fn sphere_traces() {
        let s = catalog::sphere(3).unwrap();
        let tr = s.trace_invariants(PI / 4.0).unwrap();
        assert!((tr.tr_a - 6.0).abs() < 1e-14);
        assert!(tr.tr_b.abs() < 1e-14);
    }

    #[test]
    fn constant_family_has_zero_traces() {
        let fam = PtFamily::new(
            "flat",
            alloc::vec![Block::new(Profile::constant(2.0), 3), Block::new(Profile::constant(0.5), 1)],
            Domain::new(0.0, 1.0).unwrap(),
        )
        .unwrap();
        let tr = fam.trace_invariants(0.3).unwrap();
        assert_eq!(tr, TraceInvariants::default());
        assert_eq!(fam.ricci_normal(0.3).unwrap(), 0.0);
    }

    #[test]
    fn quadric_tr_a() {
        let q = catalog::quadric(3).unwrap();
        let tr = q.trace_invariants(PI / 4.0).unwrap();
        assert!((tr.tr_a - 2.0).abs() < 1e-14);
    }

    #[test]
    fn mixed_traces_examples() {
        let s = catalog::sphere(2).unwrap();
        let t = PI / 4.0;
        let m = s.mixed_traces(t, t).unwrap();
        let tr = s.trace_invariants(t).unwrap();
        assert_eq!(m.tr_ar, tr.tr_a);
        assert_eq!(m.tr_br, tr.tr_b);
        assert!(s.mixed_traces(t, PI / 2.0).unwrap().tr_ar.abs() < 1e-14);
        let m = s.mixed_traces(t, PI / 3.0).unwrap();
        assert!((m.tr_ar - 2.0 * libm::sqrt(3.0)).abs() < 1e-14);
    }

    #[test]
    fn ricci_of_round_sphere_is_dimension() {
        for n in 1..7u32 {
            let s = catalog::sphere(n).unwrap();
            for i in 1..40 {
                let t = PI * i as f64 / 40.0;
                assert!((s.ricci_normal(t).unwrap() - n as f64).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn domain_is_open() {
        let s = catalog::sphere(2).unwrap();
        assert!(matches!(s.trace_invariants(0.0), Err(Error::OutOfDomain { .. })));
        assert!(s.trace_invariants(PI).is_err());
        assert!(s.trace_invariants(-1.0).is_err());
    }

    #[test]
    fn rejects_nonpositive_blocks() {
        let err = PtFamily::new(
            "bad",
            alloc::vec![Block::new(Profile::cos(1.0, 0.0), 1)],
            Domain::new(0.0, 3.0).unwrap(),
        );
        assert!(matches!(err, Err(Error::NonPositiveProfile { .. })));
        let err = PtFamily::new(
            "bad",
            alloc::vec![Block::new(Profile::constant(1.0), 0)],
            Domain::new(0.0, 3.0).unwrap(),
        );
        assert!(err.is_err());
    }
}
