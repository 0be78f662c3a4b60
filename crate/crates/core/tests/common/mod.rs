//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use coh1_core::catalog;
use coh1_core::PtFamily;

/// Every catalog family at a representative parameter choice.
pub fn all_families() -> Vec<PtFamily> {
    let mut out = vec![
        catalog::sphere(3).unwrap(),
        catalog::clifford(5, 2).unwrap(),
        catalog::cpn(3, 1).unwrap(),
        catalog::hpn(3).unwrap(),
        catalog::quadric(4).unwrap(),
        catalog::su3().unwrap(),
        catalog::s2xs2_so3().unwrap(),
        catalog::isoparametric(3).unwrap(),
        catalog::isoparametric(4).unwrap(),
        catalog::isoparametric(6).unwrap(),
        catalog::s2xs2_su2().unwrap(),
        catalog::revolution_default().unwrap(),
        catalog::warped_power_law(3, 1.3, 0.7, 2, 10.0).unwrap(),
        catalog::doubly_warped_standard(2, 3).unwrap(),
    ];
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// `count` interior points, kept `margin·length` away from both ends.
pub fn interior(fam: &PtFamily, count: usize, margin: f64) -> Vec<f64> {
    let (lo, hi) = (fam.domain.t_min, fam.domain.t_max);
    let len = hi - lo;
    (0..count).map(|i| lo + len * (margin + (1.0 - 2.0 * margin) * (i as f64 + 0.5) / count as f64)).collect()
}

/// Order-4 central difference of the first derivative.
pub fn fd1(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h)
}

/// Order-4 central difference of the second derivative.
pub fn fd2(f: impl Fn(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2.0 * h)) / (12.0 * h * h)
}

pub fn close(a: f64, b: f64, rtol: f64) -> bool {
    (a - b).abs() <= rtol * a.abs().max(b.abs()).max(1.0)
}
