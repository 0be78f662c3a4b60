use coh1_core::catalog;
use coh1_core::krmaps::{shoot_kr, tension_f, KrMap, RProfile, ShootConfig, ShootOutcome};

#[test]
fn sphere_identity_is_recovered() {
    let fam = catalog::sphere(3).unwrap();
    let out = shoot_kr(&fam, 1, &ShootConfig::default()).unwrap();
    let ShootOutcome::Converged(sol) = out else { panic!("no convergence: {out:?}") };
    assert!(sol.sup_distance_from_identity() < 1e-4, "{}", sol.sup_distance_from_identity());
    assert!(sol.mismatch < 1e-8);
}

#[test]
fn far_seeds_never_give_spurious_solutions() {
    let fam = catalog::sphere(3).unwrap();
    let cfg = ShootConfig { slope_range: (3.0, 6.0), seeds: 3, max_iter: 15, ..Default::default() };
    match shoot_kr(&fam, 1, &cfg).unwrap() {
        ShootOutcome::Converged(sol) => {
            assert!(sol.mismatch < cfg.tol);
            // a converged trajectory must satisfy the boundary value problem
            let m = sol.to_map(fam.clone(), 1).unwrap();
            let t = 0.5 * std::f64::consts::PI;
            assert!(tension_f(&m, t).unwrap().is_finite());
        }
        ShootOutcome::NoConvergence { best_mismatch, .. } => assert!(best_mismatch >= cfg.tol),
    }
}

#[test]
fn non_entire_family_is_verify_only() {
    let fam = catalog::warped_power_law(2, 1.0, 1.0, 2, 5.0).unwrap();
    assert!(shoot_kr(&fam, 1, &ShootConfig::default()).is_err());
}

#[test]
fn table_map_verifies_without_classification() {
    let fam = catalog::sphere(2).unwrap();
    let xs: Vec<f64> = (1..200).map(|i| f64::from(i) * std::f64::consts::PI / 200.0).collect();
    let table = coh1_core::table::SampleTable::new(xs.clone(), xs).unwrap();
    let m = KrMap::new(fam, 1, RProfile::Table { table }).unwrap();
    let rep = coh1_core::krmaps::verify(&m, 50).unwrap();
    assert!(rep.max_abs_f < 1e-6, "{}", rep.max_abs_f);
    assert!(rep.max_abs_g.is_some());
}

#[test]
fn newton_converges_from_offset_seed() {
    let fam = catalog::sphere(3).unwrap();
    let cfg = ShootConfig { slope_range: (1.3, 1.5), seeds: 2, ..Default::default() };
    let ShootOutcome::Converged(sol) = shoot_kr(&fam, 1, &cfg).unwrap() else { panic!() };
    eprintln!("iterations {} params {:?}", sol.iterations, sol.params);
    assert!(sol.iterations > 1);
    assert!(sol.sup_distance_from_identity() < 1e-4);
}
