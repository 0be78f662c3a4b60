//! Reproduction suite: every worked example as a named, filterable check.
//!
//! Each check returns a short detail line on success and a description of
//! the first discrepancy on failure.

use std::f64::consts::PI;

use coh1_core::catalog::{self, CatalogParams};
use coh1_core::cheeger::cheeger_deform;
use coh1_core::foliation;
use coh1_core::krmaps::{
    self, brouwer_degree, degree_branch, DegreeBranch, DegreeInput, KrMap, Parity, RProfile, ShootConfig,
    ShootOutcome,
};
use coh1_core::polynomial;
use coh1_core::solve::{
    biharmonic_residual, find_roots, Classification, Functional, OrbitSolution, RootScan,
};
use coh1_core::stability;
use coh1_core::{Jet3, Profile, PtFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<String, String>;

pub struct Check {
    pub id: u32,
    pub name: &'static str,
    /// Extra words matched by `--filter`.
    pub tags: &'static [&'static str],
    pub run: fn() -> Outcome,
}

impl Check {
    pub fn matches(&self, filter: &str) -> bool {
        let f = filter.to_ascii_lowercase();
        self.name.contains(&f) || self.tags.iter().any(|t| t.contains(&f)) || self.id.to_string() == f
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("[{status}] {:>2} {:<28} {}", self.id, self.name, self.detail)
    }
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { id: 1, name: "sphere_biharmonic", tags: &["sphere"], run: sphere_biharmonic },
        Check { id: 2, name: "clifford_biharmonic", tags: &["clifford"], run: clifford_biharmonic },
        Check { id: 3, name: "cpn_tubes", tags: &["cpn"], run: cpn_tubes },
        Check { id: 4, name: "hpn_tubes", tags: &["hpn"], run: hpn_tubes },
        Check { id: 5, name: "quadric_orbits", tags: &["quadric"], run: quadric_orbits },
        Check { id: 6, name: "null_cases", tags: &["su3", "s2xs2"], run: null_cases },
        Check { id: 7, name: "cheeger_s7g3", tags: &["cheeger", "s7g3"], run: cheeger_s7g3 },
        Check { id: 8, name: "cheeger_su3", tags: &["cheeger", "su3"], run: cheeger_su3 },
        Check { id: 9, name: "cheeger_s2xs2_su2", tags: &["cheeger", "s2xs2"], run: cheeger_s2xs2 },
        Check { id: 10, name: "quadric_stability", tags: &["stability", "quadric"], run: quadric_stability },
        Check { id: 11, name: "hpn_asymptotics", tags: &["stability", "hpn"], run: hpn_asymptotics },
        Check { id: 12, name: "sphere_r_harmonic", tags: &["sphere", "rharmonic"], run: sphere_r_harmonic },
        Check {
            id: 13,
            name: "quadric_clifford_r_harmonic",
            tags: &["quadric", "clifford", "rharmonic"],
            run: quadric_clifford_r_harmonic,
        },
        Check { id: 14, name: "hpn_quartic", tags: &["hpn", "rharmonic"], run: hpn_quartic },
        Check { id: 15, name: "foliations", tags: &["foliation", "torus", "warped"], run: foliations },
        Check { id: 16, name: "index_nullity", tags: &["stability", "warped"], run: index_nullity },
        Check { id: 17, name: "kr_maps", tags: &["krmap", "shooting", "degree"], run: kr_maps },
        Check { id: 18, name: "jets", tags: &["jet", "profile", "cheeger"], run: jets },
    ]
}

/// Runs the registered checks whose name, tags or id match `filter` (all if `None`).
pub fn run_checks(filter: Option<&str>) -> Vec<CheckResult> {
    run_check_list(checks(), filter)
}

/// Runs an explicit list of checks; a panicking check counts as a failure.
pub fn run_check_list(list: Vec<Check>, filter: Option<&str>) -> Vec<CheckResult> {
    list.into_iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .map(|c| {
            let start = std::time::Instant::now();
            let out = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("check panicked".to_string()));
            let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
            let (passed, detail) = match out {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { id: c.id, name: c.name, passed, detail, elapsed_ms }
        })
        .collect()
}

// ---------------------------------------------------------------- helpers

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn roots(fam: &PtFamily, f: Functional) -> Result<Vec<OrbitSolution>, String> {
    find_roots(fam, f, &RootScan::default()).map_err(err)
}

fn xs_of(sols: &[OrbitSolution]) -> Vec<f64> {
    let mut xs: Vec<f64> = sols.iter().map(|s| s.x_value.expect("substitution present")).collect();
    xs.sort_by(f64::total_cmp);
    xs
}

fn same_set(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() < tol)
}

fn proper(sols: &[OrbitSolution]) -> Vec<&OrbitSolution> {
    sols.iter().filter(|s| s.classification != Classification::Minimal).collect()
}

// ---------------------------------------------------------------- checks

fn sphere_biharmonic() -> Outcome {
    for n in 2..=8 {
        let r = roots(&catalog::sphere(n).map_err(err)?, Functional::Biharmonic)?;
        ensure(r.len() == 1, || format!("sphere({n}): {} roots", r.len()))?;
        ensure((r[0].t_root - PI / 4.0).abs() < 1e-10, || format!("sphere({n}): t = {}", r[0].t_root))?;
        ensure(r[0].classification == Classification::ProperBiharmonic, || {
            format!("sphere({n}): classified {:?}", r[0].classification)
        })?;
    }
    Ok("n = 2..8: single proper root at pi/4".into())
}

fn clifford_biharmonic() -> Outcome {
    for (n, k) in [(4u32, 1u32), (5, 2), (6, 3)] {
        let r = roots(&catalog::clifford(n, k).map_err(err)?, Functional::Biharmonic)?;
        let t_min = (f64::from(n - k) / f64::from(k)).sqrt().atan();
        let mut want = vec![PI / 4.0, t_min];
        want.sort_by(f64::total_cmp);
        want.dedup_by(|a, b| (*a - *b).abs() < 1e-10);
        let got: Vec<f64> = r.iter().map(|s| s.t_root).collect();
        ensure(same_set(&got, &want, 1e-10), || format!("({n},{k}): roots {got:?}, want {want:?}"))?;
        for s in &r {
            let at_quarter = (s.t_root - PI / 4.0).abs() < 1e-10;
            let want_proper = at_quarter && n != 2 * k;
            let is_proper = s.classification == Classification::ProperBiharmonic;
            ensure(is_proper == want_proper, || {
                format!("({n},{k}): t = {} classified {:?}", s.t_root, s.classification)
            })?;
        }
    }
    Ok("(4,1), (5,2), (6,3): roots {pi/4, arctan sqrt((n-k)/k)}".into())
}

fn cpn_tubes() -> Outcome {
    for (n, p) in [(2u32, 1u32), (3, 1), (3, 2)] {
        let r = roots(&catalog::cpn(n, p).map_err(err)?, Functional::Biharmonic)?;
        let got = xs_of(&r);
        let want = polynomial::cpn_quadratic(n, p).roots_in(0.0, 1.0);
        ensure(same_set(&got, &want, 1e-10), || format!("cpn({n},{p}): x {got:?} vs {want:?}"))?;
    }
    Ok("(2,1), (3,1), (3,2): roots match the quadratic".into())
}

fn hpn_tubes() -> Outcome {
    for n in [2u32, 3, 5] {
        let r = roots(&catalog::hpn(n).map_err(err)?, Functional::Biharmonic)?;
        ensure(r.len() == 2 && proper(&r).len() == 2, || format!("hpn({n}): {r:?}"))?;
        let got = xs_of(&r);
        let want = polynomial::hpn_quadratic(n).roots_in(0.0, 1.0);
        ensure(same_set(&got, &want, 1e-10), || format!("hpn({n}): x {got:?} vs {want:?}"))?;
        let x_min = 3.0 / (2.0 * (2.0 * f64::from(n) + 1.0));
        ensure(got.iter().all(|x| (x - x_min).abs() > 1e-6), || {
            format!("hpn({n}): minimal orbit among biharmonic roots")
        })?;
        if n == 2 {
            ensure((got[0] - 0.125).abs() < 1e-12, || format!("hpn(2): x- = {}", got[0]))?;
        }
    }
    Ok("n = 2, 3, 5: two proper roots; x- = 1/8 at n = 2".into())
}

fn quadric_orbits() -> Outcome {
    for n in 3..=5u32 {
        let r = roots(&catalog::quadric(n).map_err(err)?, Functional::Biharmonic)?;
        ensure(r.len() == 2, || format!("quadric({n}): {} roots", r.len()))?;
        let mut pairs: Vec<(f64, Classification)> =
            r.iter().map(|s| (s.x_value.unwrap_or(f64::NAN), s.classification)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let want = [(1.0 / f64::from(n), Classification::Minimal), (0.5, Classification::ProperBiharmonic)];
        for (g, w) in pairs.iter().zip(&want) {
            ensure((g.0 - w.0).abs() < 1e-10 && g.1 == w.1, || format!("quadric({n}): {g:?} vs {w:?}"))?;
        }
    }
    Ok("n = 3, 4, 5: x = 1/n minimal, x = 1/2 proper".into())
}

fn null_cases() -> Outcome {
    let su3 = catalog::su3().map_err(err)?;
    let so3 = catalog::s2xs2_so3().map_err(err)?;
    ensure(roots(&su3, Functional::Biharmonic)?.is_empty(), || "su3 has roots".into())?;
    ensure(roots(&so3, Functional::Biharmonic)?.is_empty(), || "s2xs2_so3 has roots".into())?;
    for i in 1..=200 {
        let t = PI / 2.0 * f64::from(i) / 201.0;
        let v = biharmonic_residual(&so3, t).map_err(err)?;
        ensure((v + 2.0).abs() < 1e-12, || format!("s2xs2_so3 trB({t}) = {v}"))?;
    }
    Ok("su3 and s2xs2_so3: no roots; trB = -2".into())
}

fn cheeger_s7g3() -> Outcome {
    let base = catalog::isoparametric(3).map_err(err)?;
    ensure(roots(&base, Functional::Biharmonic)?.is_empty(), || "roots at s = 0".into())?;
    let def = cheeger_deform(&base, 1.0).map_err(err)?;
    let r = roots(&def, Functional::Biharmonic)?;
    let hit = proper(&r)
        .into_iter()
        .find(|s| s.t_root > PI / 6.0 && s.t_root < PI / 4.0)
        .ok_or_else(|| format!("no proper root in (pi/6, pi/4): {r:?}"))?;
    ensure(hit.residual.abs() < 1e-12, || format!("residual {}", hit.residual))?;
    for s in [0.0, 0.5, 1.0, 2.0] {
        let m = roots(&cheeger_deform(&base, s).map_err(err)?, Functional::Minimal)?;
        ensure(m.len() == 1 && (m[0].t_root - PI / 6.0).abs() < 1e-10, || {
            format!("s = {s}: minimal locus {:?}", m.iter().map(|x| x.t_root).collect::<Vec<_>>())
        })?;
    }
    Ok(format!("s = 1 root t0 = {:.10}; minimal locus pi/6 for all s", hit.t_root))
}

fn cheeger_su3() -> Outcome {
    let def = cheeger_deform(&catalog::su3().map_err(err)?, 1.0).map_err(err)?;
    let v = biharmonic_residual(&def, PI / 6.0).map_err(err)?;
    ensure((v + 1.0).abs() < 1e-12, || format!("trB(pi/6) = {v}"))?;
    let r = roots(&def, Functional::Biharmonic)?;
    let hit = proper(&r)
        .into_iter()
        .find(|s| s.t_root > 0.0 && s.t_root < PI / 6.0)
        .ok_or_else(|| format!("no proper root in (0, pi/6): {r:?}"))?;
    Ok(format!("trB(pi/6) = -1; proper root at {:.10}", hit.t_root))
}

fn cheeger_s2xs2() -> Outcome {
    let base = catalog::s2xs2_su2().map_err(err)?;
    let def = cheeger_deform(&base, 1.0).map_err(err)?;
    let r = roots(&def, Functional::Biharmonic)?;
    let hit = proper(&r)
        .into_iter()
        .find(|s| s.t_root > 0.0 && s.t_root < PI / 8.0)
        .ok_or_else(|| format!("no proper root in (0, pi/8): {r:?}"))?;
    let m = roots(&def, Functional::Minimal)?;
    ensure(m.len() == 1 && (m[0].t_root - PI / 8.0).abs() < 1e-10, || format!("minimal locus {m:?}"))?;
    ensure(proper(&roots(&base, Functional::Biharmonic)?).is_empty(), || "proper root at s = 0".into())?;
    Ok(format!("s = 1 proper root at {:.10}; minimal locus pi/8", hit.t_root))
}

fn quadric_stability() -> Outcome {
    for n in 3..=5u32 {
        let rep = stability::stability_report(&catalog::quadric(n).map_err(err)?, PI / 4.0).map_err(err)?;
        let want = -16.0 * f64::from(n - 2).powi(2);
        ensure((rep.criterion - want).abs() < 1e-9, || format!("n = {n}: {} vs {want}", rep.criterion))?;
        ensure(rep.unstable, || format!("n = {n}: not flagged unstable"))?;
    }
    Ok("trA*trC = -16(n-2)^2, unstable, n = 3, 4, 5".into())
}

fn hpn_asymptotics() -> Outcome {
    let (a, c) = stability::hpn_asymptotics_probe(1_000_000).map_err(err)?;
    let (wa, wc) = (-12.0 * 3f64.sqrt(), 48.0 * 3f64.sqrt());
    ensure(((a - wa) / wa).abs() < 0.02, || format!("sqrt(n) trA = {a}, want {wa}"))?;
    ensure(((c - wc) / wc).abs() < 0.02, || format!("trC / sqrt(n) = {c}, want {wc}"))?;
    Ok(format!("n = 1e6: sqrt(n) trA = {a:.6}, trC/sqrt(n) = {c:.6}"))
}

fn sphere_r_harmonic() -> Outcome {
    for n in 2..=5u32 {
        for r in 2..=6u32 {
            let f = Functional::of_order(r).map_err(err)?;
            let sols = roots(&catalog::sphere(n).map_err(err)?, f)?;
            let want = (1.0 / f64::from(r).sqrt()).asin();
            ensure(sols.len() == 1 && (sols[0].t_root - want).abs() < 1e-10, || {
                format!("sphere({n}), r = {r}: {:?}", sols.iter().map(|s| s.t_root).collect::<Vec<_>>())
            })?;
        }
    }
    Ok("r = 2..6: root at arcsin(1/sqrt r)".into())
}

fn quadric_clifford_r_harmonic() -> Outcome {
    for n in 3..=5u32 {
        for r in 2..=6u32 {
            let f = Functional::of_order(r).map_err(err)?;
            let q = roots(&catalog::quadric(n).map_err(err)?, f)?;
            let c = roots(&catalog::clifford(n, 1).map_err(err)?, f)?;
            let (tq, tc): (Vec<f64>, Vec<f64>) =
                (q.iter().map(|s| s.t_root).collect(), c.iter().map(|s| s.t_root).collect());
            ensure(same_set(&tq, &tc, 1e-10), || format!("n = {n}, r = {r}: {tq:?} vs {tc:?}"))?;
            let mut xp: Vec<f64> = proper(&q).iter().filter_map(|s| s.x_value).collect();
            xp.sort_by(f64::total_cmp);
            let want = polynomial::quadric_cubic(n, r).roots_in(0.0, 1.0);
            ensure(same_set(&xp, &want, 1e-10), || format!("n = {n}, r = {r}: x {xp:?} vs cubic {want:?}"))?;
            for s in q.iter().filter(|s| s.classification == Classification::Minimal) {
                let x = s.x_value.unwrap_or(f64::NAN);
                ensure((x - 1.0 / f64::from(n)).abs() < 1e-10, || format!("stray minimal root x = {x}"))?;
            }
        }
    }
    Ok("n = 3..5, r = 2..6: equal root sets; proper roots = cubic roots".into())
}

fn hpn_quartic() -> Outcome {
    for n in [2u32, 3, 5] {
        let x_min = 3.0 / (2.0 * (2.0 * f64::from(n) + 1.0));
        for r in 2..=4u32 {
            let p = polynomial::hpn_quartic(n, r);
            ensure(p.eval(0.0) == 18.0, || format!("P(0) = {}", p.eval(0.0)))?;
            ensure(p.eval(x_min) < 0.0, || format!("n = {n}, r = {r}: P(x_min) = {}", p.eval(x_min)))?;
            let sols = roots(&catalog::hpn(n).map_err(err)?, Functional::of_order(r).map_err(err)?)?;
            let quartic = p.roots_in(0.0, 1.0);
            let x = sols
                .iter()
                .filter_map(|s| s.x_value)
                .find(|&x| x > 0.0 && x < x_min)
                .ok_or_else(|| format!("n = {n}, r = {r}: no solver root in (0, x_min)"))?;
            ensure(quartic.iter().any(|q| (q - x).abs() < 1e-8), || {
                format!("n = {n}, r = {r}: x = {x} not a quartic root {quartic:?}")
            })?;
        }
        let q2 = polynomial::hpn_quartic(n, 2).roots_in(0.0, 1.0);
        let b = polynomial::hpn_quadratic(n).roots_in(0.0, 1.0);
        ensure(same_set(&q2, &b, 1e-8), || format!("n = {n}: quartic {q2:?} vs quadratic {b:?}"))?;
    }
    Ok("sign conditions hold; solver roots are quartic roots".into())
}

fn foliations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for r in 2..=5u32 {
        let (c1, c2) = (rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0));
        for i in 0..50 {
            let t = 0.2 * f64::from(i);
            let v = foliation::warped_leaf_residual(r, c1, c2, t).map_err(err)?;
            ensure(v.abs() < 1e-12, || format!("warped r = {r}, c1 = {c1}, c2 = {c2}, t = {t}: {v}"))?;
        }
    }
    for (n, m) in [(1u32, 1u32), (2, 3), (3, 2)] {
        let (lo, hi) = foliation::doubly_warped_interval(n, m);
        for i in 1..=50 {
            let t = lo + (hi - lo) * f64::from(i) / 51.0;
            let v = foliation::doubly_warped_residual(n, m, t).map_err(err)?;
            ensure(v.abs() < 1e-12, || format!("doubly ({n},{m}) t = {t}: {v}"))?;
        }
        let fam = catalog::doubly_warped_standard(n, m).map_err(err)?;
        let mins = roots(&fam, Functional::Minimal)?;
        let want = foliation::doubly_warped_minimal_time(n, m);
        ensure(mins.len() == 1 && (mins[0].t_root - want).abs() < 1e-10, || {
            format!("doubly ({n},{m}): minimal locus {mins:?}, want {want}")
        })?;
    }
    for a in [1.0, 0.37, -2.5] {
        let c = foliation::torus_family(a, 0.0).map_err(err)?;
        ensure(c.is_proper() && c.is_c1_periodic(), || format!("torus a = {a}: {c:?}"))?;
        ensure(foliation::torus_partition_check(a, 10_000).map_err(err)?, || format!("partition a = {a}"))?;
    }
    Ok("warped, doubly warped and torus foliations verified".into())
}

/// Independent multiplicity: `(n+2k−1)(n+k−2)! / (k!(n−1)!)` with exact factorials.
fn multiplicity_oracle(k: u32, n: u32) -> u128 {
    let fact = |m: u32| (1..=u128::from(m)).product::<u128>();
    if k == 0 {
        return 1;
    }
    u128::from(n + 2 * k - 1) * fact(n + k - 2) / (fact(k) * fact(n - 1))
}

/// Enumerates the leaf spectrum `k(n+k−1)/t` for `k ≤ 1000` and counts
/// negative and null directions of `μ(μ − t⁻²)`.
fn index_oracle(n: u32, t: f64) -> (u128, u128) {
    let (mut index, mut nullity) = (0u128, 1u128);
    for k in 1..=1000u32 {
        let kk = f64::from(k) * f64::from(n + k - 1);
        if (t * kk - 1.0).abs() <= 1e-12 {
            nullity += multiplicity_oracle(k, n);
        } else {
            let mu = kk / t;
            if mu * (mu - 1.0 / (t * t)) < 0.0 {
                index += multiplicity_oracle(k, n);
            }
        }
    }
    (index, nullity)
}

fn index_nullity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let n = rng.gen_range(2..=6u32);
        let t = rng.gen_range(0.01..3.0);
        let got = stability::warped_index_nullity(n, t, 1e-12).map_err(err)?;
        let want = index_oracle(n, t);
        ensure((u128::from(got.index), u128::from(got.nullity)) == want, || {
            format!("n = {n}, t = {t}: {got:?} vs oracle {want:?}")
        })?;
    }
    for (n, t, want) in [(2u32, 0.1, (8u64, 1u64)), (2, 0.5, (0, 4)), (2, 2.0, (0, 1))] {
        let got = stability::warped_index_nullity(n, t, 1e-12).map_err(err)?;
        ensure((got.index, got.nullity) == want, || format!("n = {n}, t = {t}: {got:?}"))?;
    }
    Ok("100 random (n, t) agree with spectrum enumeration; spot values match".into())
}

fn kr_maps() -> Outcome {
    let fams = [
        catalog::sphere(3).map_err(err)?,
        catalog::clifford(5, 2).map_err(err)?,
        catalog::quadric(4).map_err(err)?,
    ];
    for fam in fams {
        let m = KrMap::new(fam.clone(), 1, RProfile::identity()).map_err(err)?;
        for i in 1..=50 {
            let t = fam.domain.t_min + fam.domain.length() * f64::from(i) / 51.0;
            let f = krmaps::tension_f(&m, t).map_err(err)?;
            let g = krmaps::bitension_g(&m, t).map_err(err)?;
            ensure(f.abs() < 1e-12 && g.abs() < 1e-12, || format!("{} t = {t}: F = {f}, G = {g}", fam.name))?;
        }
    }
    let fam = catalog::sphere(3).map_err(err)?;
    let sup = match krmaps::shoot_kr(&fam, 1, &ShootConfig::default()).map_err(err)? {
        ShootOutcome::Converged(sol) => sol.sup_distance_from_identity(),
        ShootOutcome::NoConvergence { best_mismatch, .. } => {
            return Err(format!("shooting did not converge (best mismatch {best_mismatch})"))
        }
    };
    ensure(sup < 1e-4, || format!("sup |r - t| = {sup}"))?;

    // the degree table spelled out case by case
    let expected = |d: &DegreeInput, k: i64| -> i64 {
        let both_odd = d.codim_n0_parity == Parity::Odd && d.codim_n1_parity == Parity::Odd;
        let both_even = d.codim_n0_parity == Parity::Even && d.codim_n1_parity == Parity::Even;
        let even_odd = d.codim_n0_parity == Parity::Even && d.codim_n1_parity == Parity::Odd;
        match d.j_parity {
            Parity::Even => {
                if both_odd {
                    k
                } else {
                    1
                }
            }
            Parity::Odd if both_odd => k,
            Parity::Odd if both_even && !d.w_order.is_multiple_of(4) => 0,
            Parity::Odd if even_odd && !d.w_order.is_multiple_of(8) => -1,
            Parity::Odd => 1,
        }
    };
    let mut seen: Vec<DegreeBranch> = Vec::new();
    for j in [Parity::Even, Parity::Odd] {
        for c0 in [Parity::Even, Parity::Odd] {
            for c1 in [Parity::Even, Parity::Odd] {
                for w in [2u32, 4, 6, 8, 12, 16] {
                    let d = DegreeInput { j_parity: j, codim_n0_parity: c0, codim_n1_parity: c1, w_order: w };
                    let k = 7;
                    let got = brouwer_degree(&d, k).map_err(err)?;
                    ensure(got == expected(&d, k), || format!("{d:?}: degree {got}"))?;
                    let b = degree_branch(&d).map_err(err)?;
                    if !seen.contains(&b) {
                        seen.push(b);
                    }
                }
            }
        }
    }
    ensure(seen.len() == 8, || format!("only {} degree branches reached", seen.len()))?;
    Ok(format!("identity F = G = 0; shooting sup |r - t| = {sup:.2e}; 8 degree branches"))
}

/// Order-4 central differences for the first three derivatives.
fn fd3(f: impl Fn(f64) -> f64, t: f64, h: f64) -> [f64; 3] {
    let p = |k: f64| f(t + k * h);
    [
        (-p(2.0) + 8.0 * p(1.0) - 8.0 * p(-1.0) + p(-2.0)) / (12.0 * h),
        (-p(2.0) + 16.0 * p(1.0) - 30.0 * p(0.0) + 16.0 * p(-1.0) - p(-2.0)) / (12.0 * h * h),
        (-p(3.0) + 8.0 * p(2.0) - 13.0 * p(1.0) + 13.0 * p(-1.0) - 8.0 * p(-2.0) + p(-3.0))
            / (8.0 * h * h * h),
    ]
}

/// Every profile of every catalog family, plain and Cheeger-deformed, with
/// the interval it must be positive on.
pub fn catalog_profiles() -> Result<Vec<(String, Profile, f64, f64)>, String> {
    let params =
        CatalogParams { n: Some(3), k: Some(1), p: Some(1), m: Some(2), r: Some(3), ..Default::default() };
    let mut out = Vec::new();
    for name in catalog::NAMES {
        let fam = catalog::make(name, &params).map_err(err)?;
        let def = cheeger_deform(&fam, 0.7).map_err(err)?;
        for (tag, f) in [("", &fam), ("cheeger ", &def)] {
            for (i, b) in f.blocks.iter().enumerate() {
                let label = format!("{tag}{name}[{i}]");
                out.push((label, b.profile.clone(), f.domain.t_min, f.domain.t_max));
            }
        }
    }
    Ok(out)
}

fn jets() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let profiles = catalog_profiles()?;
    for (label, p, lo, hi) in &profiles {
        // balances stencil truncation against roundoff in the third difference
        let h = 5e-3 * (hi - lo).min(1.0);
        for _ in 0..100 {
            let t = rng.gen_range(lo + 4.0 * h..hi - 4.0 * h);
            let j = p.eval(t).map_err(err)?;
            let fd = fd3(|x| p.eval(x).map(|j| j.v).unwrap_or(f64::NAN), t, h);
            for (k, (a, b)) in [j.d1, j.d2, j.d3].into_iter().zip(fd).enumerate() {
                ensure((a - b).abs() <= 1e-6 * a.abs().max(b.abs()).max(1.0), || {
                    format!("{label} t = {t}: d{} = {a} vs finite difference {b}", k + 1)
                })?;
            }
        }
        let same = p.clone().cheeger(0.0).map_err(err)?;
        for _ in 0..10 {
            let t = rng.gen_range(lo + 4.0 * h..hi - 4.0 * h);
            let (x, y): (Jet3, Jet3) = (p.eval(t).map_err(err)?, same.eval(t).map_err(err)?);
            ensure(x == y, || format!("{label}: Cheeger s = 0 differs at t = {t}"))?;
        }
    }
    Ok(format!("{} profiles x 100 points agree with finite differences", profiles.len()))
}
