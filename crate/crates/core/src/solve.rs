//! Residual functionals for special orbits and a bracketing root scan.
//!
//! An orbit is minimal where `trA` vanishes, biharmonic where `trB`
//! vanishes, and r-harmonic where
//! `(trA2/4)·trB + ((2−r)·trA/8)·(trA3 − 2·trAB)` vanishes.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::PtFamily;
use crate::jets::Dual;
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Functional {
    Biharmonic,
    RHarmonic { r: u32 },
    Minimal,
}

impl Functional {
    /// The r-harmonic functional, with `r = 2` mapped to the biharmonic one.
    pub fn of_order(r: u32) -> Result<Self> {
        match r {
            0 | 1 => Err(Error::InvalidOrder(r)),
            2 => Ok(Functional::Biharmonic),
            r => Ok(Functional::RHarmonic { r }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    Minimal,
    ProperBiharmonic,
    ProperRHarmonic { r: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitSolution {
    pub t_root: f64,
    /// Grid cell that bracketed the root.
    pub bracket: (f64, f64),
    /// Value of the scanned functional at `t_root`.
    pub residual: f64,
    pub tr_a_at_root: f64,
    pub classification: Classification,
    /// `cos² t_root` for families carrying that substitution.
    pub x_value: Option<f64>,
    /// The functional touches zero without changing sign.
    #[serde(default)]
    pub tangential: bool,
}

/// Scan settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootScan {
    pub grid_points: usize,
    pub tol: f64,
    /// Relative to the median of `|trA|` over the grid.
    pub classification_tol: f64,
}

impl Default for RootScan {
    fn default() -> Self {
        RootScan { grid_points: 4096, tol: 1e-12, classification_tol: 1e-8 }
    }
}

/// Cells with both ends above this magnitude straddle a pole.
const POLE_LEVEL: f64 = 1e12;
/// A tangential zero must be this small relative to the median `|f|`.
const TANGENT_LEVEL: f64 = 1e-9;
/// Grid-wide bound below which the functional counts as identically zero.
const IDENTICALLY_ZERO_LEVEL: f64 = 1e-10;

/// `trace P⁻¹P̈`; zero exactly at biharmonic orbits.
pub fn biharmonic_residual(fam: &PtFamily, t: f64) -> Result<f64> {
    Ok(fam.trace_invariants(t)?.tr_b)
}

/// `trace P⁻¹Ṗ`; zero exactly at minimal orbits.
pub fn minimal_residual(fam: &PtFamily, t: f64) -> Result<f64> {
    Ok(fam.trace_invariants(t)?.tr_a)
}

/// `β·trB − ((2−r)α/4)·(trA3 − 2·trAB)` with `α = −trA/2`, `β = trA2/4`.
pub fn rharmonic_residual(fam: &PtFamily, t: f64, r: u32) -> Result<f64> {
    if r < 2 {
        return Err(Error::InvalidOrder(r));
    }
    let tr = fam.trace_invariants(t)?;
    let k = 2.0 - f64::from(r);
    Ok(0.25 * tr.tr_a2 * tr.tr_b + k * tr.tr_a / 8.0 * (tr.tr_a3 - 2.0 * tr.tr_ab))
}

/// The function whose zeros the scan brackets, with its `t`-derivative.
///
/// The r-harmonic residual is divided by `β = trA2/4`, which is positive
/// except at totally geodesic orbits. The quotient has the same zeros but no
/// spurious double zeros where `β` vanishes, and reduces to `trB` for `r = 2`.
fn scanned(fam: &PtFamily, functional: Functional, t: f64) -> Result<Dual> {
    let tr = fam.trace_slopes(t)?;
    Ok(match functional {
        Functional::Biharmonic => tr.tr_b,
        Functional::Minimal => tr.tr_a,
        Functional::RHarmonic { r } => {
            if tr.tr_a2.v == 0.0 {
                tr.tr_b
            } else {
                let k = 0.5 * (2.0 - f64::from(r));
                tr.tr_b + (tr.tr_a * (tr.tr_a3 - tr.tr_ab * 2.0)) / tr.tr_a2 * k
            }
        }
    })
}

/// Value of the scanned functional; see [`find_roots`].
pub fn scanned_residual(fam: &PtFamily, functional: Functional, t: f64) -> Result<f64> {
    Ok(scanned(fam, functional, t)?.v)
}

fn median_abs(values: &[f64]) -> f64 {
    let mut v: Vec<f64> = values.iter().map(|x| x.abs()).filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return 0.0;
    }
    let mid = v.len() / 2;
    let (_, m, _) = v.select_nth_unstable_by(mid, f64::total_cmp);
    *m
}

/// Bisects `g` on `[a, b]` given `g(a)` and `g(b)` of opposite signs, until
/// the midpoint is no longer representable between the ends.
fn bisect(mut a: f64, mut b: f64, ga: f64, g: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let sa = ga.signum();
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            return Ok((a, b));
        }
        let gm = g(m)?;
        if gm == 0.0 {
            return Ok((m, m));
        }
        if gm.signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
}

struct Candidate {
    t: f64,
    bracket: (f64, f64),
    tangential: bool,
}

/// Locates the zeros of a functional on the open domain.
///
/// Sign changes are found on a uniform grid at distance
/// `max(1e-9, length/10⁶)` from the singular ends and refined by bisection
/// to the limit of floating point, well below `scan.tol`. A cell without a
/// sign change whose derivative changes sign is also refined; the critical
/// point is reported as a tangential root when the functional vanishes
/// there relative to its typical size on the grid. Cells with both ends
/// beyond `1e12` in magnitude are treated as poles and skipped. For families
/// with a mirror symmetry only roots on the near side of the mirror are kept.
pub fn find_roots(fam: &PtFamily, functional: Functional, scan: &RootScan) -> Result<Vec<OrbitSolution>> {
    if fam.is_verify_only() {
        return Err(Error::VerifyOnly);
    }
    if let Functional::RHarmonic { r } = functional {
        if r < 2 {
            return Err(Error::InvalidOrder(r));
        }
    }
    if scan.grid_points < 16 {
        return Err(invalid("grid_points must be >= 16"));
    }
    if !(scan.tol > 0.0 && scan.classification_tol > 0.0) {
        return Err(invalid("tolerances must be positive"));
    }

    let dom = fam.domain;
    let eps = (dom.length() / 1e6).max(1e-9);
    let (lo, hi) = (dom.t_min + eps, dom.t_max - eps);
    let n = scan.grid_points;
    let ts: Vec<f64> =
        (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect();
    let mut fs = Vec::with_capacity(n);
    let mut ds = Vec::with_capacity(n);
    let mut tr_as = Vec::with_capacity(n);
    for &t in &ts {
        let v = scanned(fam, functional, t)?;
        fs.push(v.v);
        ds.push(v.d);
        tr_as.push(fam.trace_invariants(t)?.tr_a);
    }
    let f_scale = median_abs(&fs);
    let a_scale = match median_abs(&tr_as) {
        m if m > 0.0 => m,
        _ => 1.0,
    };
    // compare against trA², which carries the units of the scanned functional
    let f_max = fs.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if f_max <= IDENTICALLY_ZERO_LEVEL * (a_scale * a_scale).max(1.0) {
        return Err(Error::VanishesIdentically);
    }
    let value = |t: f64| scanned_residual(fam, functional, t);
    let slope = |t: f64| Ok(scanned(fam, functional, t)?.d);

    let mut cands: Vec<Candidate> = Vec::new();
    for i in 0..n - 1 {
        let (t0, t1, f0, f1) = (ts[i], ts[i + 1], fs[i], fs[i + 1]);
        if !(f0.is_finite() && f1.is_finite()) {
            continue;
        }
        if f0.abs() > POLE_LEVEL && f1.abs() > POLE_LEVEL {
            continue;
        }
        if f0 == 0.0 {
            cands.push(Candidate { t: t0, bracket: (t0, t0), tangential: false });
            continue;
        }
        if f0 * f1 < 0.0 {
            let (a, b) = bisect(t0, t1, f0, value)?;
            let t = if value(a)?.abs() <= value(b)?.abs() { a } else { b };
            // a pole crossed by the cell leaves a large value behind
            if value(t)?.abs() > TANGENT_LEVEL * f_scale.max(1.0) {
                continue;
            }
            cands.push(Candidate { t, bracket: (t0, t1), tangential: false });
        } else if ds[i] * ds[i + 1] < 0.0 && f0 * ds[i] < 0.0 {
            // |f| decreases into the cell and turns around inside it
            let (a, b) = bisect(t0, t1, ds[i], slope)?;
            let t = 0.5 * (a + b);
            if value(t)?.abs() <= TANGENT_LEVEL * f_scale {
                cands.push(Candidate { t, bracket: (t0, t1), tangential: true });
            }
        }
    }
    if fs[n - 1] == 0.0 {
        cands.push(Candidate { t: hi, bracket: (hi, hi), tangential: false });
    }

    let mut out = Vec::with_capacity(cands.len());
    for c in cands {
        if let Some(center) = fam.mirror {
            if c.t > center + 1e-9 {
                continue;
            }
        }
        if out.last().is_some_and(|s: &OrbitSolution| (s.t_root - c.t).abs() < scan.tol) {
            continue;
        }
        let tr_a = fam.trace_invariants(c.t)?.tr_a;
        let classification =
            if functional == Functional::Minimal || tr_a.abs() < scan.classification_tol * a_scale {
                Classification::Minimal
            } else {
                match functional {
                    Functional::RHarmonic { r } if r > 2 => Classification::ProperRHarmonic { r },
                    _ => Classification::ProperBiharmonic,
                }
            };
        out.push(OrbitSolution {
            t_root: c.t,
            bracket: c.bracket,
            residual: value(c.t)?,
            tr_a_at_root: tr_a,
            classification,
            x_value: fam.substitution.map(|s| s.apply(c.t)),
            tangential: c.tangential,
        });
    }
    Ok(out)
}

/// Evaluates `poly` at `x = cos²t` for families carrying that substitution.
pub fn polynomial_check(fam: &PtFamily, t: f64, poly: &Polynomial) -> Result<f64> {
    let sub = fam.substitution.ok_or(Error::MissingSubstitution)?;
    fam.domain.check(t)?;
    Ok(poly.eval(sub.apply(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::cheeger::cheeger_deform;
    use crate::polynomial;
    use core::f64::consts::PI;

    fn roots(fam: &PtFamily, f: Functional) -> Vec<OrbitSolution> {
        find_roots(fam, f, &RootScan::default()).unwrap()
    }

    #[test]
    fn foliation_residual_is_reported_as_degenerate() {
        let fam = catalog::warped_power_law(3, 1.0, 1.0, 2, 10.0).unwrap();
        let got = find_roots(&fam, Functional::RHarmonic { r: 3 }, &RootScan::default());
        assert_eq!(got, Err(Error::VanishesIdentically));
    }

    #[test]
    fn residual_examples() {
        assert!(biharmonic_residual(&catalog::sphere(3).unwrap(), PI / 4.0).unwrap().abs() < 1e-14);
        assert!(biharmonic_residual(&catalog::quadric(3).unwrap(), PI / 4.0).unwrap().abs() < 1e-14);
        let s = catalog::s2xs2_so3().unwrap();
        for t in [0.1, 0.7, 1.4] {
            assert!((biharmonic_residual(&s, t).unwrap() + 2.0).abs() < 1e-12);
        }
        let c = catalog::clifford(5, 2).unwrap();
        let t = libm::atan(libm::sqrt(1.5));
        assert!(minimal_residual(&c, t).unwrap().abs() < 1e-13);
        let n = 3;
        let h = catalog::hpn(n).unwrap();
        let t = libm::acos(libm::sqrt(3.0 / (2.0 * (2.0 * f64::from(n) + 1.0))));
        assert!(minimal_residual(&h, t).unwrap().abs() < 1e-13);
        assert!(minimal_residual(&catalog::sphere(4).unwrap(), PI / 2.0).unwrap().abs() < 1e-14);
        assert!(rharmonic_residual(&h, 1.0, 1).is_err());
    }

    #[test]
    fn sphere_single_root() {
        let r = roots(&catalog::sphere(4).unwrap(), Functional::Biharmonic);
        assert_eq!(r.len(), 1);
        assert!((r[0].t_root - PI / 4.0).abs() < 1e-10);
        assert_eq!(r[0].classification, Classification::ProperBiharmonic);
        assert!(r[0].residual.abs() < 1e-12);
    }

    #[test]
    fn sphere_rharmonic() {
        for order in 2..=6u32 {
            let f = Functional::of_order(order).unwrap();
            let r = roots(&catalog::sphere(3).unwrap(), f);
            assert_eq!(r.len(), 1, "r={order}: {r:?}");
            let want = libm::asin(1.0 / libm::sqrt(f64::from(order)));
            assert!((r[0].t_root - want).abs() < 1e-10);
        }
    }

    #[test]
    fn null_cases() {
        assert!(roots(&catalog::su3().unwrap(), Functional::Biharmonic).is_empty());
        assert!(roots(&catalog::s2xs2_so3().unwrap(), Functional::Biharmonic).is_empty());
        assert!(roots(&catalog::isoparametric(3).unwrap(), Functional::Biharmonic).is_empty());
    }

    #[test]
    fn quadric_roots() {
        for n in 3..=5u32 {
            let r = roots(&catalog::quadric(n).unwrap(), Functional::Biharmonic);
            assert_eq!(r.len(), 2);
            let mut xs: Vec<(f64, Classification)> =
                r.iter().map(|s| (s.x_value.unwrap(), s.classification)).collect();
            xs.sort_by(|a, b| a.0.total_cmp(&b.0));
            assert!((xs[0].0 - 1.0 / f64::from(n)).abs() < 1e-10);
            assert_eq!(xs[0].1, Classification::Minimal);
            assert!((xs[1].0 - 0.5).abs() < 1e-10);
            assert_eq!(xs[1].1, Classification::ProperBiharmonic);
        }
    }

    #[test]
    fn clifford_tangential_root() {
        let r = roots(&catalog::clifford(6, 3).unwrap(), Functional::Biharmonic);
        assert_eq!(r.len(), 1, "{r:?}");
        assert!((r[0].t_root - PI / 4.0).abs() < 1e-10);
        assert!(r[0].tangential);
        assert_eq!(r[0].classification, Classification::Minimal);
    }

    #[test]
    fn cheeger_s7g3() {
        let fam = cheeger_deform(&catalog::isoparametric(3).unwrap(), 1.0).unwrap();
        let r = roots(&fam, Functional::Biharmonic);
        let proper: Vec<_> =
            r.iter().filter(|s| s.classification == Classification::ProperBiharmonic).collect();
        assert!(proper.iter().any(|s| s.t_root > PI / 6.0 && s.t_root < PI / 4.0));
    }

    #[test]
    fn polynomial_check_needs_substitution() {
        let p = polynomial::hpn_quadratic(2);
        assert_eq!(polynomial_check(&catalog::su3().unwrap(), 0.5, &p), Err(Error::MissingSubstitution));
        let t = libm::acos(libm::sqrt(0.125));
        assert!(polynomial_check(&catalog::hpn(2).unwrap(), t, &p).unwrap().abs() < 1e-13);
    }

    #[test]
    fn verify_only_family_rejected() {
        use crate::geometry::{Block, Domain};
        use crate::profile::Profile;
        use crate::table::SampleTable;
        let xs: Vec<f64> = (0..20).map(|i| 0.05 * f64::from(i)).collect();
        let ys = xs.iter().map(|x| 1.0 + x).collect();
        let fam = PtFamily::new(
            "table",
            alloc::vec![Block::new(Profile::table(SampleTable::new(xs, ys).unwrap()), 2)],
            Domain::new(0.0, 0.95).unwrap(),
        )
        .unwrap();
        assert!(biharmonic_residual(&fam, 0.5).is_ok());
        assert_eq!(find_roots(&fam, Functional::Biharmonic, &RootScan::default()), Err(Error::VerifyOnly));
    }
}
