//! End-to-end tests of the `coh1` binary and its report formats.

use std::f64::consts::PI;
use std::process::{Command, Output};

use coh1::cli::{self, print_results, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use coh1::report::SolveReport;
use coh1::verify::{run_check_list, Check};
use coh1_core::catalog;
use coh1_core::solve::{find_roots, Classification, Functional, RootScan};

fn coh1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coh1")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Runs the CLI in-process, returning (exit code, stdout).
fn run(args: &[&str]) -> (i32, String) {
    let mut buf = Vec::new();
    let mut argv = vec!["coh1"];
    argv.extend_from_slice(args);
    let code = cli::run_with(argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

#[test]
fn catalog_lists_every_family() {
    let o = coh1(&["catalog"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let names: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(names, catalog::NAMES);
}

#[test]
fn catalog_family_json_describes_blocks() {
    let (code, out) = run(&["catalog", "--geometry", "clifford", "--n", "5", "--k", "2"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["name"], "clifford");
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(v["blocks"][0]["profile"]["kind"], "cos_sq");
    assert_eq!(v["params"]["n"], 5);
}

#[test]
fn solve_quadric_json_round_trips() {
    let o = coh1(&["solve", "--geometry", "quadric", "--n", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let report: SolveReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.geometry, "quadric");
    assert_eq!(report.roots.len(), 2);
    let mut xs: Vec<(f64, Classification)> =
        report.roots.iter().map(|r| (r.x_value.unwrap(), r.classification)).collect();
    xs.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert!((xs[0].0 - 1.0 / 3.0).abs() < 1e-10 && xs[0].1 == Classification::Minimal);
    assert!((xs[1].0 - 0.5).abs() < 1e-10 && xs[1].1 == Classification::ProperBiharmonic);
    // printed at 17 significant digits, the report parses back to itself
    let again = coh1::format::to_json(&report).unwrap();
    assert_eq!(serde_json::from_str::<SolveReport>(&again).unwrap(), report);
    assert_eq!(again.trim_end(), text.trim_end());
}

#[test]
fn solve_output_is_deterministic_without_timing() {
    let args = ["solve", "--geometry", "su3", "--cheeger-s", "1", "--no-timing"];
    assert_eq!(stdout(&coh1(&args)), stdout(&coh1(&args)));
}

#[test]
fn solve_sphere_order_three() {
    let (code, out) = run(&["solve", "--geometry", "sphere", "--n", "4", "--order", "3"]);
    assert_eq!(code, EXIT_OK);
    let report: SolveReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.order_r, 3);
    assert_eq!(report.roots.len(), 1);
    let t = report.roots[0].t_root;
    assert!((t.sin().powi(2) - 1.0 / 3.0).abs() < 1e-10);
    assert_eq!(report.roots[0].classification, Classification::ProperRHarmonic { r: 3 });
}

#[test]
fn solve_su3_deformed_has_proper_root_below_pi_over_six() {
    let (_, out) = run(&["solve", "--geometry", "su3", "--cheeger-s", "1"]);
    let report: SolveReport = serde_json::from_str(&out).unwrap();
    let inside: Vec<_> = report.roots.iter().filter(|r| r.t_root > 0.0 && r.t_root < PI / 6.0).collect();
    assert_eq!(inside.len(), 1);
    assert_eq!(inside[0].classification, Classification::ProperBiharmonic);
}

#[test]
fn csv_and_table_formats() {
    let (code, csv_out) = run(&["solve", "--geometry", "quadric", "--n", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(csv_out.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), coh1::report::CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    let x: f64 = rows[0][10].parse().unwrap();
    assert!((x - 0.5).abs() < 1e-10);

    let (code, table) = run(&["solve", "--geometry", "quadric", "--n", "4", "--format", "table"]);
    assert_eq!(code, EXIT_OK);
    assert!(table.contains("proper_biharmonic") && table.contains("minimal"));
    assert!(table.contains("0.785398"));
}

#[test]
fn sweep_orders_recovers_arcsin_roots_in_order() {
    let (code, out) = run(&["sweep", "--geometry", "sphere", "--n", "3", "--orders", "2,3,4,5,6"]);
    assert_eq!(code, EXIT_OK);
    let reports: Vec<SolveReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(reports.len(), 5);
    for (rep, r) in reports.iter().zip(2u32..) {
        assert_eq!(rep.order_r, r);
        assert_eq!(rep.roots.len(), 1);
        let want = (1.0 / f64::from(r)).sqrt().asin();
        assert!((rep.roots[0].t_root - want).abs() < 1e-10);
    }
}

#[test]
fn sweep_s7g3_gains_roots_under_deformation() {
    let (code, out) = run(&["sweep", "--geometry", "s7g3", "--cheeger", "0:2:0.25", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let svals: Vec<f64> = rdr.records().map(|r| r.unwrap()[1].parse().unwrap()).collect();
    assert!(!svals.contains(&0.0), "no roots at s = 0");
    let at = |s: f64| svals.iter().filter(|&&v| v == s).count();
    assert_eq!(at(1.0), 2);
    assert_eq!(at(2.0), 2);
    // the transition happens somewhere in (0, 1]
    assert!(svals.iter().all(|&s| s > 0.0));
}

#[test]
fn sweep_s2xs2_su2_proper_root_appears() {
    let (_, out) = run(&["sweep", "--geometry", "s2xs2_su2", "--cheeger", "0:1:1"]);
    let reports: Vec<SolveReport> = serde_json::from_str(&out).unwrap();
    let proper =
        |rep: &SolveReport| rep.roots.iter().filter(|r| r.classification != Classification::Minimal).count();
    assert_eq!(proper(&reports[0]), 0);
    assert!(proper(&reports[1]) >= 1);
}

#[test]
fn sweep_result_independent_of_thread_count() {
    let args = ["sweep", "--geometry", "s7g3", "--cheeger", "0:2:0.5", "--no-timing", "--format", "csv"];
    let one = Command::new(env!("CARGO_BIN_EXE_coh1")).args(args).env("COH1_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_coh1")).args(args).env("COH1_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(EXIT_OK));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn cli_matches_library_roots() {
    let (_, out) = run(&["solve", "--geometry", "cpn", "--n", "3", "--p", "1"]);
    let report: SolveReport = serde_json::from_str(&out).unwrap();
    let fam = catalog::make("cpn", &catalog::CatalogParams { n: Some(3), p: Some(1), ..Default::default() })
        .unwrap();
    let direct = find_roots(&fam, Functional::Biharmonic, &RootScan::default()).unwrap();
    assert_eq!(report.roots, direct);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["solve"][..],
        &["solve", "--geometry", "nope"],
        &["solve", "--geometry", "sphere", "--order", "1"],
        &["solve", "--geometry", "sphere", "--format", "xml"],
        &["solve", "--geometry", "clifford", "--n", "4", "--k", "4"],
        &["sweep", "--geometry", "sphere", "--cheeger", "1:0:0.5"],
        &["sweep", "--geometry", "sphere", "--cheeger", "a:b"],
        &["sweep", "--geometry", "sphere"],
        &["verify", "--filter", "no-such-check"],
        &["frobnicate"],
    ] {
        let o = coh1(args);
        assert_eq!(o.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} explains itself");
    }
}

#[test]
fn degenerate_functional_is_a_runtime_failure() {
    let o = coh1(&["solve", "--geometry", "warped", "--c1", "1", "--c2", "1", "--order", "3"]);
    assert_eq!(o.status.code(), Some(EXIT_FAILURE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vanishes identically"));
}

#[test]
fn stability_subcommands() {
    let (code, out) =
        run(&["stability", "report", "--geometry", "quadric", "--n", "4", "--t", &(PI / 4.0).to_string()]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let crit = v[0]["report"]["criterion"].as_f64().unwrap();
    assert!((crit + 64.0).abs() < 1e-9);
    assert_eq!(v[0]["report"]["unstable"], true);

    assert_eq!(run(&["stability", "multiplicity", "--k", "3", "--n", "2"]), (EXIT_OK, "7\n".into()));
    let (code, out) = run(&["stability", "multiplicity", "--k", "40", "--n", "40"]);
    assert_eq!(code, EXIT_FAILURE, "{out}");

    let (code, out) = run(&["stability", "index", "--n", "2", "--t", "0.1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["index"].as_u64().unwrap() >= 1);

    let (code, out) = run(&["stability", "hpn", "--n", "2", "--n-max", "20"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["x_minus"].as_f64().unwrap() - 0.125).abs() < 1e-12);

    let (code, _) = run(&[
        "stability",
        "eigenvalue-bound",
        "--ricci-lower",
        "0",
        "--dim-factor",
        "3",
        "--max-mean-curv",
        "1",
    ]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn krmap_shoot_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let (code, out) =
        run(&["krmap", "shoot", "--geometry", "sphere", "--n", "3", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["converged"], true);
    assert!(v["sup_distance_from_identity"].as_f64().unwrap() < 1e-6);

    let mut rdr = csv::Reader::from_path(&path).unwrap();
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["t", "r", "r_dot", "F"]);
    for rec in rdr.records() {
        let rec = rec.unwrap();
        let t: f64 = rec[0].parse().unwrap();
        let r: f64 = rec[1].parse().unwrap();
        assert!((t - r).abs() < 1e-6);
    }
}

#[test]
fn krmap_verify_reads_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.csv");
    let mut text = String::from("t,r\n");
    for i in 0..=400 {
        let t = PI * f64::from(i) / 400.0;
        text.push_str(&format!("{t},{t}\n"));
    }
    std::fs::write(&path, text).unwrap();
    let (code, out) = run(&[
        "krmap",
        "verify",
        "--geometry",
        "sphere",
        "--n",
        "3",
        "--r-table",
        path.to_str().unwrap(),
        "--points",
        "20",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["max_abs_f"].as_f64().unwrap() < 1e-6);

    let (code, _) = run(&["krmap", "verify", "--geometry", "sphere", "--n", "3", "--linear", "1,2,3"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn krmap_degree() {
    let (code, out) =
        run(&["krmap", "degree", "--j", "3", "--w-order", "2", "--codim0", "1", "--codim1", "2"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["k"].is_i64() && v["degree"].is_i64());
}

#[test]
fn foliation_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.csv");
    let (code, out) = run(&[
        "foliation",
        "warped",
        "--r",
        "4",
        "--c1",
        "0.7",
        "--c2",
        "2.5",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["max_abs_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(csv::Reader::from_path(&path).unwrap().records().count(), 50);

    let (code, out) = run(&["foliation", "doubly", "--n", "2", "--m", "3"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["max_abs_residual"].as_f64().unwrap() < 1e-12);

    let (code, out) = run(&["foliation", "torus", "--a", "0.37", "--samples", "2000"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c0_periodic"], true);
    assert_eq!(v["c1_periodic"], true);
    assert_eq!(v["partition"], true);
}

#[test]
fn verify_filter_runs_only_matching_checks() {
    let o = coh1(&["verify", "--filter", "hpn"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with('[')).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.starts_with("[PASS]") && l.contains("hpn")));
}

fn corrupted_sphere() -> Result<String, String> {
    // wrong expected root location: pi/3 instead of the true pi/4
    let expected = PI / 3.0;
    let fam = catalog::sphere(4).map_err(|e| e.to_string())?;
    let roots = find_roots(&fam, Functional::Biharmonic, &RootScan::default()).map_err(|e| e.to_string())?;
    if (roots[0].t_root - expected).abs() < 1e-10 {
        Ok("matches".into())
    } else {
        Err(format!("root {} differs from expected {expected}", roots[0].t_root))
    }
}

#[test]
fn corrupted_constant_fails_with_named_check() {
    let list = vec![Check { id: 1, name: "sphere_biharmonic", tags: &["sphere"], run: corrupted_sphere }];
    let results = run_check_list(list, None);
    let mut buf = Vec::new();
    let code = print_results(&results, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(code, EXIT_FAILURE);
    assert!(text.lines().next().unwrap().starts_with("[FAIL]  1 sphere_biharmonic"));
    assert!(text.contains("0 of 1 checks passed"));
}

#[test]
fn panicking_check_is_reported_as_failure() {
    fn boom() -> Result<String, String> {
        panic!("boom")
    }
    let results = run_check_list(vec![Check { id: 99, name: "boom", tags: &[], run: boom }], None);
    assert!(!results[0].passed);
}
