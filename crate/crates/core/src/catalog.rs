//! Named orbit families.
//!
//! Each constructor returns the diagonal entries exactly as written for the
//! corresponding group action, including the normalization of the
//! biinvariant metric, which is absorbed into the entries.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::{Block, Domain, Param, PtFamily, Substitution};
use crate::profile::Profile;

/// Catalog names accepted by [`make`].
pub const NAMES: &[&str] = &[
    "sphere",
    "clifford",
    "cpn",
    "hpn",
    "quadric",
    "su3",
    "s2xs2_so3",
    "s7g3",
    "s9g4",
    "s13g6",
    "s2xs2_su2",
    "revolution",
    "warped",
    "doubly_warped",
];

/// Parameters addressed by catalog name; unused entries are ignored.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CatalogParams {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub p: Option<u32>,
    pub m: Option<u32>,
    /// Polyharmonic order used by the `warped` power-law family.
    pub r: Option<u32>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    /// Right end of the scanned interval for non-compact families.
    pub t_max: Option<f64>,
}

fn need(v: Option<u32>, name: &str, family: &str) -> Result<u32> {
    v.ok_or_else(|| invalid(format!("family `{family}` requires --{name}")))
}

/// Builds a catalog family by name.
pub fn make(name: &str, p: &CatalogParams) -> Result<PtFamily> {
    match name {
        "sphere" => sphere(need(p.n, "n", name)?),
        "clifford" => clifford(need(p.n, "n", name)?, need(p.k, "k", name)?),
        "cpn" => cpn(need(p.n, "n", name)?, need(p.p, "p", name)?),
        "hpn" => hpn(need(p.n, "n", name)?),
        "quadric" => quadric(need(p.n, "n", name)?),
        "su3" => su3(),
        "s2xs2_so3" => s2xs2_so3(),
        "s7g3" => isoparametric(3),
        "s9g4" => isoparametric(4),
        "s13g6" => isoparametric(6),
        "s2xs2_su2" => s2xs2_su2(),
        "revolution" => revolution_default(),
        "warped" => warped_power_law(
            need(p.r, "order", name)?,
            p.c1.unwrap_or(1.0),
            p.c2.unwrap_or(1.0),
            p.n.unwrap_or(2),
            p.t_max.unwrap_or(10.0),
        ),
        "doubly_warped" => doubly_warped_standard(need(p.n, "n", name)?, need(p.m, "m", name)?),
        other => Err(Error::UnknownFamily(other.into())),
    }
}

fn blocks(entries: Vec<(Profile, u32)>) -> Vec<Block> {
    entries.into_iter().filter(|(_, m)| *m > 0).map(|(p, m)| Block::new(p, m)).collect()
}

fn int(v: u32) -> Param {
    Param::Int(i64::from(v))
}

/// Round sphere `S^{n+1}` with the `SO(n+1)` action.
pub fn sphere(n: u32) -> Result<PtFamily> {
    if n < 1 {
        return Err(invalid("sphere requires n >= 1"));
    }
    let fam = PtFamily::new("sphere", blocks(vec![(Profile::sin_sq(1.0, 0.0), n)]), Domain::new(0.0, PI)?)?;
    Ok(fam.with_param("n", int(n)).with_mirror(PI / 2.0))
}

/// `S^{n+1}` with the `SO(k+1) × SO(n-k+1)` action.
pub fn clifford(n: u32, k: u32) -> Result<PtFamily> {
    if !(k >= 1 && k < n) {
        return Err(invalid("clifford requires 1 <= k <= n-1"));
    }
    let fam = PtFamily::new(
        "clifford",
        blocks(vec![(Profile::cos_sq(1.0, 0.0), k), (Profile::sin_sq(1.0, 0.0), n - k)]),
        Domain::new(0.0, PI / 2.0)?,
    )?;
    Ok(fam.with_param("n", int(n)).with_param("k", int(k)).with_substitution(Substitution::CosSquared))
}

/// `η²` for tubes around a totally geodesic `CP^{n-p}` in `CP^n`.
pub fn cpn_eta_sq(n: u32, p: u32) -> f64 {
    let (n, p) = (f64::from(n), f64::from(p));
    2.0 * (n - p - 1.0) / (n - p) + 2.0 * p / (p + 1.0)
}

/// `CP^n` with the `SU(p+1) × SU(n-p)` action.
pub fn cpn(n: u32, p: u32) -> Result<PtFamily> {
    if !(p >= 1 && p < n) {
        return Err(invalid("cpn requires 1 <= p <= n-1"));
    }
    let eta_sq = cpn_eta_sq(n, p);
    let fam = PtFamily::new(
        "cpn",
        blocks(vec![
            (Profile::cos_sq(1.0, 0.0), 2 * p),
            (Profile::sin_sq(1.0, 0.0), 2 * (n - p - 1)),
            (Profile::sin_sq(2.0, 0.0).scaled(eta_sq / 4.0), 1),
        ]),
        Domain::new(0.0, PI / 2.0)?,
    )?;
    Ok(fam
        .with_param("n", int(n))
        .with_param("p", int(p))
        .with_param("eta_sq", Param::Real(eta_sq))
        .with_substitution(Substitution::CosSquared))
}

/// `HP^n` with the `Sp(n) × Sp(1)` action.
pub fn hpn(n: u32) -> Result<PtFamily> {
    if n < 1 {
        return Err(invalid("hpn requires n >= 1"));
    }
    let fam = PtFamily::new(
        "hpn",
        blocks(vec![(Profile::sin_sq(1.0, 0.0), 4 * (n - 1)), (Profile::sin_sq(2.0, 0.0), 3)]),
        Domain::new(0.0, PI / 2.0)?,
    )?;
    Ok(fam.with_param("n", int(n)).with_substitution(Substitution::CosSquared))
}

/// Complex quadric `Q_n` with the `SO(n+1)` action.
pub fn quadric(n: u32) -> Result<PtFamily> {
    if n < 2 {
        return Err(invalid("quadric requires n >= 2"));
    }
    let fam = PtFamily::new(
        "quadric",
        blocks(vec![
            (Profile::cos_sq(1.0, 0.0), 1),
            (Profile::constant(1.0), n - 1),
            (Profile::sin_sq(1.0, 0.0), n - 1),
        ]),
        Domain::new(0.0, PI / 2.0)?,
    )?;
    Ok(fam.with_param("n", int(n)).with_substitution(Substitution::CosSquared))
}

/// `SU(3)` acting on itself by `(A, B) ↦ A B Aᵀ`.
pub fn su3() -> Result<PtFamily> {
    PtFamily::new(
        "su3",
        blocks(vec![
            (Profile::constant(4.0), 1),
            (Profile::cos_sq(1.0, 0.0).scaled(4.0), 2),
            (Profile::sin_sq(0.5, 0.0).scaled(4.0), 2),
            (Profile::cos_sq(0.5, 0.0).scaled(4.0), 2),
        ]),
        Domain::new(0.0, PI / 2.0)?,
    )
}

/// `S² × S²` with the diagonal `SO(3)` action; entries are first powers.
pub fn s2xs2_so3() -> Result<PtFamily> {
    PtFamily::new(
        "s2xs2_so3",
        blocks(vec![
            (Profile::sin(1.0, 0.0).scaled(2.0), 1),
            (Profile::cos(1.0, 0.0).scaled(2.0), 1),
            (Profile::constant(2.0), 1),
        ]),
        Domain::new(0.0, PI / 2.0)?,
    )
}

/// Homogeneous isoparametric family with `g ∈ {3, 4, 6}` principal
/// curvatures of multiplicity two in `S^7`, `S^9`, `S^13`.
pub fn isoparametric(g: u32) -> Result<PtFamily> {
    let name = match g {
        3 => "s7g3",
        4 => "s9g4",
        6 => "s13g6",
        _ => return Err(invalid("isoparametric family requires g in {3, 4, 6}")),
    };
    let gf = f64::from(g);
    let entries = (0..g).map(|j| (Profile::sin_sq(1.0, 0.0 - f64::from(j) * PI / gf), 2)).collect();
    let fam = PtFamily::new(name, blocks(entries), Domain::new(0.0, PI / gf)?)?;
    Ok(fam.with_param("g", int(g)).with_substitution(Substitution::CosSquared))
}

/// `S² × S² = CP¹ × CP¹` with the diagonal `SU(2)` action.
pub fn s2xs2_su2() -> Result<PtFamily> {
    PtFamily::new(
        "s2xs2_su2",
        blocks(vec![
            (Profile::sin_sq(2.0, 0.0), 1),
            (Profile::constant(1.0), 1),
            (Profile::cos_sq(2.0, 0.0), 1),
        ]),
        Domain::new(0.0, PI / 4.0)?,
    )
}

/// Surface of revolution with unit-speed profile radius `phi`.
pub fn revolution(phi: Profile, domain: Domain) -> Result<PtFamily> {
    PtFamily::new("revolution", vec![Block::new(phi.squared(), 1)], domain)
}

/// Revolution surface with `φ(t) = 2 + sin t` on `(0, 2π)`.
pub fn revolution_default() -> Result<PtFamily> {
    revolution(Profile::sin(1.0, 0.0).shifted(2.0), Domain::new(0.0, 2.0 * PI)?)
}

/// Warped product `dt² + f² g_{Sⁿ}`; `f_sq` is the block entry `f²`.
pub fn warped(f_sq: Profile, n: u32, domain: Domain) -> Result<PtFamily> {
    if n < 1 {
        return Err(invalid("warped requires n >= 1"));
    }
    Ok(PtFamily::new("warped", vec![Block::new(f_sq, n)], domain)?.with_param("n", int(n)))
}

/// Warped product with `f = c1 (c2 + t)^{(r-1)/r}`, whose leaves are all r-harmonic.
pub fn warped_power_law(r: u32, c1: f64, c2: f64, n: u32, t_max: f64) -> Result<PtFamily> {
    if r < 2 {
        return Err(Error::InvalidOrder(r));
    }
    if !(c1 > 0.0 && c2 > 0.0) {
        return Err(invalid("warped requires c1, c2 > 0"));
    }
    let q = f64::from(r - 1) / f64::from(r);
    Ok(warped(Profile::power_law(c1, c2, q), n, Domain::new(0.0, t_max)?)?
        .with_param("r", int(r))
        .with_param("c1", Param::Real(c1))
        .with_param("c2", Param::Real(c2)))
}

/// Doubly warped product `dt² + f² g_{Sⁿ} + h² g_{Sᵐ}`; arguments are `f²` and `h²`.
pub fn doubly_warped(f_sq: Profile, n: u32, h_sq: Profile, m: u32, domain: Domain) -> Result<PtFamily> {
    if n < 1 || m < 1 {
        return Err(invalid("doubly_warped requires n, m >= 1"));
    }
    Ok(PtFamily::new("doubly_warped", vec![Block::new(f_sq, n), Block::new(h_sq, m)], domain)?
        .with_param("n", int(n))
        .with_param("m", int(m)))
}

/// Half-width of the interval on which `cos(2t√(n/m)) > 0`.
pub fn doubly_warped_half_width(n: u32, m: u32) -> f64 {
    PI / 4.0 * libm::sqrt(f64::from(m) / f64::from(n))
}

/// `f² = e^{2t}`, `h² = cos(2t√(n/m))` on `(-(π/4)√(m/n), (π/4)√(m/n))`.
pub fn doubly_warped_standard(n: u32, m: u32) -> Result<PtFamily> {
    if n < 1 || m < 1 {
        return Err(invalid("doubly_warped requires n, m >= 1"));
    }
    let omega = 2.0 * libm::sqrt(f64::from(n) / f64::from(m));
    let w = doubly_warped_half_width(n, m);
    doubly_warped(Profile::exp2(1.0), n, Profile::cos(omega, 0.0), m, Domain::new(-w, w)?)
}
