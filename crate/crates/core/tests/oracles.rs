//! Independent numerical oracles for the geometric quantities.

mod common;

use std::f64::consts::PI;

use coh1_core::catalog;
use coh1_core::cheeger::cheeger_deform;
use coh1_core::solve::{self, find_roots, Classification, Functional, RootScan};
use common::{all_families, close, fd1, interior};

#[test]
fn mean_curvature_trace_is_log_volume_slope() {
    for fam in all_families() {
        let log_det = |t: f64| -> f64 {
            fam.blocks.iter().map(|b| f64::from(b.multiplicity) * b.profile.eval(t).unwrap().v.ln()).sum()
        };
        let h = 1e-4 * fam.domain.length().min(1.0);
        for t in interior(&fam, 50, 0.05) {
            let tr_a = fam.trace_invariants(t).unwrap().tr_a;
            let oracle = fd1(log_det, t, h);
            assert!(close(tr_a, oracle, 1e-8), "{} at {t}: {tr_a} vs {oracle}", fam.name);
        }
    }
}

#[test]
fn traces_are_additive_over_blocks() {
    for fam in all_families() {
        let split = fam.split_into_singletons();
        assert_eq!(split.orbit_dim(), fam.orbit_dim());
        for t in interior(&fam, 25, 0.05) {
            let (a, b) = (fam.trace_invariants(t).unwrap(), split.trace_invariants(t).unwrap());
            for (x, y) in [
                (a.tr_a, b.tr_a),
                (a.tr_a2, b.tr_a2),
                (a.tr_b, b.tr_b),
                (a.tr_c, b.tr_c),
                (a.tr_a3, b.tr_a3),
                (a.tr_ab, b.tr_ab),
            ] {
                assert!(close(x, y, 1e-13), "{}: {x} vs {y}", fam.name);
            }
        }
    }
}

#[test]
fn normal_ricci_of_round_sphere_is_dimension() {
    for n in 1..=8 {
        let fam = catalog::sphere(n).unwrap();
        for t in interior(&fam, 40, 0.01) {
            let ric = fam.ricci_normal(t).unwrap();
            assert!((ric - f64::from(n)).abs() < 1e-9, "n = {n}, t = {t}: {ric}");
        }
    }
}

#[test]
fn normal_ricci_matches_volume_second_derivative() {
    // with a = (log p)' per block, trB = (log det)'' + trA2, hence
    // Ric(N, N) = -½ (log det)'' - ¼ trA2; sample away from the collapsing ends
    let fam = catalog::quadric(4).unwrap();
    let log_det = |t: f64| -> f64 {
        fam.blocks.iter().map(|b| f64::from(b.multiplicity) * b.profile.eval(t).unwrap().v.ln()).sum()
    };
    for t in interior(&fam, 30, 0.15) {
        let tr = fam.trace_invariants(t).unwrap();
        let oracle = -0.5 * common::fd2(log_det, t, 1e-3) - 0.25 * tr.tr_a2;
        let ric = fam.ricci_normal(t).unwrap();
        assert!(close(ric, oracle, 1e-7), "t = {t}: {ric} vs {oracle}");
    }
}

#[test]
fn product_of_spheres_has_constant_second_trace() {
    let fam = catalog::s2xs2_so3().unwrap();
    for t in interior(&fam, 50, 0.001) {
        let tr_b = solve::biharmonic_residual(&fam, t).unwrap();
        assert!((tr_b + 2.0).abs() < 1e-12, "t = {t}: {tr_b}");
    }
}

#[test]
fn clifford_minimal_orbit_closed_form() {
    for (n, k) in [(3u32, 1u32), (4, 1), (5, 2), (6, 3), (7, 2)] {
        let fam = catalog::clifford(n, k).unwrap();
        let t = (f64::from(n - k) / f64::from(k)).sqrt().atan();
        assert!(solve::minimal_residual(&fam, t).unwrap().abs() < 1e-12);
    }
}

#[test]
fn reported_roots_are_bracketed_sign_changes() {
    for fam in all_families() {
        for functional in [Functional::Biharmonic, Functional::Minimal, Functional::RHarmonic { r: 3 }] {
            let roots = match find_roots(&fam, functional, &RootScan::default()) {
                Ok(r) => r,
                Err(coh1_core::Error::VanishesIdentically) => continue,
                Err(e) => panic!("{}: {e}", fam.name),
            };
            for s in roots {
                let value = |t: f64| solve::scanned_residual(&fam, functional, t).unwrap();
                assert!(s.residual.abs() < 1e-12, "{} {functional:?}: residual {}", fam.name, s.residual);
                assert!(s.bracket.0 <= s.t_root && s.t_root <= s.bracket.1);
                if !s.tangential && s.bracket.0 < s.bracket.1 {
                    assert!(value(s.bracket.0) * value(s.bracket.1) <= 0.0, "{} at {}", fam.name, s.t_root);
                }
                let minimal = s.classification == Classification::Minimal;
                if functional == Functional::Minimal {
                    assert!(minimal);
                }
            }
        }
    }
}

#[test]
fn second_order_scan_equals_biharmonic_scan() {
    for fam in all_families() {
        let scan = RootScan::default();
        let bi = find_roots(&fam, Functional::Biharmonic, &scan);
        let r2 = find_roots(&fam, Functional::of_order(2).unwrap(), &scan);
        let r2_explicit = find_roots(&fam, Functional::RHarmonic { r: 2 }, &scan);
        match (bi, r2, r2_explicit) {
            (Ok(a), Ok(b), Ok(c)) => {
                assert_eq!(a.len(), b.len(), "{}", fam.name);
                assert_eq!(a.len(), c.len(), "{}", fam.name);
                for ((x, y), z) in a.iter().zip(&b).zip(&c) {
                    assert!((x.t_root - y.t_root).abs() < 1e-10 && (x.t_root - z.t_root).abs() < 1e-10);
                    assert_eq!(x.classification, y.classification);
                    assert_eq!(x.classification, z.classification);
                }
            }
            (a, b, c) => assert!(a.is_err() && b.is_err() && c.is_err(), "{}", fam.name),
        }
    }
}

/// Sign-change locations of `f` on a uniform grid, refined by bisection.
fn grid_zeros(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let ts: Vec<f64> = (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect();
    let mut out = Vec::new();
    for w in ts.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        if f(a) * f(b) > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m == a || m == b {
                break;
            }
            if f(a) * f(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

#[test]
fn surface_of_revolution_profile_criterion() {
    // For a profile phi, the polyharmonic parallels are the zeros of
    // phi'^2 - (1 - r) phi phi''. With phi = 2 + sin t this is
    // cos^2 t + (r - 1)(2 + sin t)(-sin t).
    let fam = catalog::revolution_default().unwrap();
    let (lo, hi) = (fam.domain.t_min + 1e-6, fam.domain.t_max - 1e-6);
    for r in 2..=6u32 {
        let criterion = |t: f64| {
            let (phi, d1, d2) = (2.0 + t.sin(), t.cos(), -t.sin());
            d1 * d1 - (1.0 - f64::from(r)) * phi * d2
        };
        let want = grid_zeros(criterion, lo, hi, 200);
        let residual = |t: f64| solve::rharmonic_residual(&fam, t, r).unwrap();
        let got = grid_zeros(residual, lo, hi, 200);
        assert_eq!(got.len(), want.len(), "r = {r}: {got:?} vs {want:?}");
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10, "r = {r}: {g} vs {w}");
        }
        let solver = find_roots(&fam, Functional::of_order(r).unwrap(), &RootScan::default()).unwrap();
        let ts: Vec<f64> = solver.iter().map(|s| s.t_root).collect();
        assert_eq!(ts.len(), want.len());
        for (g, w) in ts.iter().zip(&want) {
            assert!((g - w).abs() < 1e-10, "r = {r}: {g} vs {w}");
        }
    }
}

#[test]
fn isoparametric_cubic_has_no_biharmonic_orbits() {
    let fam = catalog::isoparametric(3).unwrap();
    assert!(find_roots(&fam, Functional::Biharmonic, &RootScan::default()).unwrap().is_empty());
    // trB · sin²t sin²(t−π/3) sin²(t−2π/3) / 2 keeps one strict sign on the interval
    let cleared: Vec<f64> = interior(&fam, 500, 1e-4)
        .into_iter()
        .map(|t| {
            let tr_b = solve::biharmonic_residual(&fam, t).unwrap();
            tr_b * (t.sin() * (t - PI / 3.0).sin() * (t - 2.0 * PI / 3.0).sin()).powi(2) / 2.0
        })
        .collect();
    let sign = cleared[0].signum();
    assert!(cleared.iter().all(|v| v.signum() == sign && v.abs() > 1e-6), "{cleared:?}");
}

#[test]
fn deformed_isoparametric_minimal_locus_is_fixed() {
    let base = catalog::isoparametric(3).unwrap();
    for s in [0.0, 0.5, 1.0, 2.0] {
        let fam = cheeger_deform(&base, s).unwrap();
        let roots = find_roots(&fam, Functional::Minimal, &RootScan::default()).unwrap();
        assert_eq!(roots.len(), 1, "s = {s}");
        assert!((roots[0].t_root - PI / 6.0).abs() < 1e-10);
    }
}

#[test]
fn deformed_isoparametric_residual_signs() {
    let fam = cheeger_deform(&catalog::isoparametric(3).unwrap(), 1.0).unwrap();
    assert!(solve::biharmonic_residual(&fam, PI / 6.0).unwrap() < 0.0);
    assert!(solve::biharmonic_residual(&fam, PI / 4.0).unwrap() > 0.0);
    let su3 = cheeger_deform(&catalog::su3().unwrap(), 1.0).unwrap();
    assert!((solve::biharmonic_residual(&su3, PI / 6.0).unwrap() + 1.0).abs() < 1e-12);
}
