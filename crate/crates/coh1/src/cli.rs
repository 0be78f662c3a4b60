//! Subcommand front end. Exit codes: 0 success, 1 verification or runtime
//! failure, 2 usage error.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coh1_core::catalog::{self, CatalogParams};
use coh1_core::cheeger::{cheeger_deform, PARAM_KEY};
use coh1_core::krmaps::{self, DegreeInput, KrMap, Parity, RProfile, ShootConfig, ShootOutcome};
use coh1_core::solve::{find_roots, Functional, RootScan};
use coh1_core::table::SampleTable;
use coh1_core::{foliation, stability, Error, PtFamily};
use rayon::prelude::*;
use serde::Serialize;

use crate::format::{g17, g6, to_json};
use crate::report::{SolveReport, CSV_HEADER};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker threads of parallel commands.
pub const THREADS_ENV: &str = "COH1_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "coh1",
    version,
    about = "Biharmonic and polyharmonic orbits of cohomogeneity-one manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog families, or describe one as JSON
    Catalog(CatalogArgs),
    /// Locate and classify special orbits of one family
    Solve(SolveArgs),
    /// Solve over a range of Cheeger parameters or polyharmonic orders
    Sweep(SweepArgs),
    /// Second-variation quantities and index counts
    #[command(subcommand)]
    Stability(StabilityCmd),
    /// Equivariant (k, r)-maps
    #[command(subcommand)]
    Krmap(KrmapCmd),
    /// Explicit polyharmonic foliations
    #[command(subcommand)]
    Foliation(FoliationCmd),
    /// Run the reproduction suite
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// Catalog name (see `coh1 catalog`)
    #[arg(long)]
    pub geometry: String,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Warping constants of the `warped` family
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long)]
    pub c2: Option<f64>,
    /// Right end of the interval for the `warped` family
    #[arg(long)]
    pub t_max: Option<f64>,
}

impl ParamArgs {
    fn to_catalog(&self, order: Option<u32>) -> CatalogParams {
        CatalogParams {
            n: self.n,
            k: self.k,
            p: self.p,
            m: self.m,
            r: order,
            c1: self.c1,
            c2: self.c2,
            t_max: self.t_max,
        }
    }
}

impl FamilyArgs {
    fn build(&self, order: Option<u32>, cheeger_s: f64) -> Result<PtFamily, CliError> {
        let fam = catalog::make(&self.geometry, &self.params.to_catalog(order))?;
        Ok(if cheeger_s != 0.0 { cheeger_deform(&fam, cheeger_s)? } else { fam })
    }
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Family to describe; lists all names when absent
    #[arg(long)]
    pub geometry: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Minimality threshold relative to the median |trA| on the grid
    #[arg(long, default_value_t = 1e-8)]
    pub class_tol: f64,
    /// Locate minimal orbits instead of polyharmonic ones
    #[arg(long)]
    pub minimal: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Report elapsed_ms as 0 for byte-identical output
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Polyharmonic order r (2 = biharmonic)
    #[arg(long, default_value_t = 2)]
    pub order: u32,
    #[arg(long, default_value_t = 0.0)]
    pub cheeger_s: f64,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Cheeger parameter range START:END:STEP
    #[arg(long, conflicts_with = "orders")]
    pub cheeger: Option<String>,
    /// Comma-separated polyharmonic orders
    #[arg(long, value_delimiter = ',')]
    pub orders: Option<Vec<u32>>,
    /// Fixed order for Cheeger sweeps
    #[arg(long, default_value_t = 2)]
    pub order: u32,
    /// Fixed Cheeger parameter for order sweeps
    #[arg(long, default_value_t = 0.0)]
    pub cheeger_s: f64,
    #[command(flatten)]
    pub scan: ScanArgs,
}

#[derive(Subcommand, Debug)]
pub enum StabilityCmd {
    /// Instability criterion at an orbit
    Report {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.0)]
        cheeger_s: f64,
        /// Orbit parameter; defaults to every proper biharmonic root
        #[arg(long)]
        t: Option<f64>,
        /// Also report the Hessian lower bound for this eigenvalue
        #[arg(long)]
        mu: Option<f64>,
    },
    /// Normal index and nullity of a leaf of the warped foliation
    Index {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-12)]
        atol: f64,
    },
    /// Lower bound for the first nonzero Laplace eigenvalue
    EigenvalueBound {
        #[arg(long)]
        ricci_lower: f64,
        #[arg(long)]
        dim_factor: u32,
        #[arg(long)]
        max_mean_curv: f64,
    },
    /// Scaled traces at the biharmonic tube in HP^n and the index-one threshold
    Hpn {
        #[arg(long)]
        n: u32,
        /// Search the index-one threshold up to this dimension
        #[arg(long, default_value_t = 200)]
        n_max: u32,
    },
    /// Multiplicity of the k-th eigenvalue of the round S^n
    Multiplicity {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum KrmapCmd {
    /// Solve the biharmonic boundary value problem by two-sided shooting
    Shoot {
        #[command(flatten)]
        family: FamilyArgs,
        /// Boundary winding: r(L) = winding * L
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        winding: i32,
        #[arg(long, default_value_t = 0.5)]
        slope_lo: f64,
        #[arg(long, default_value_t = 1.5)]
        slope_hi: f64,
        #[arg(long, default_value_t = 5)]
        seeds: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the solution as CSV (t, r, r_dot, F)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate F and G for a given map
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        /// Boundary winding: r(L) = winding * L
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        winding: i32,
        /// CSV file with columns t, r
        #[arg(long, conflicts_with = "linear")]
        r_table: Option<PathBuf>,
        /// r(t) = SLOPE*t + OFFSET
        #[arg(long, value_delimiter = ',', value_name = "SLOPE,OFFSET", allow_negative_numbers = true)]
        linear: Option<Vec<f64>>,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Admissible winding and Brouwer degree
    Degree {
        #[arg(long)]
        j: i64,
        #[arg(long)]
        w_order: u32,
        #[arg(long)]
        codim0: u32,
        #[arg(long)]
        codim1: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum FoliationCmd {
    /// Warped product with f = c1 (c2 + t)^((r-1)/r)
    Warped {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, default_value_t = 1.0)]
        c2: f64,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Doubly warped product with f^2 = e^(2t), h^2 = cos(2t sqrt(n/m))
    Doubly {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cubic-graph foliation of the square torus
    Torus {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 0.0)]
        d: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only checks whose name, tag or id matches
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFamily(_) | Error::InvalidParameter(_) | Error::InvalidOrder(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

/// Parses `args` and runs the command, writing to `out`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            EXIT_FAILURE
        }
    }
}

pub fn run() -> i32 {
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    run_with(std::env::args_os(), &mut lock)
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Catalog(a) => cmd_catalog(a, out),
        Command::Solve(a) => {
            let report = cmd_solve(&a)?;
            emit_reports(std::slice::from_ref(&report), a.scan.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Sweep(a) => {
            let reports = cmd_sweep(&a)?;
            emit_reports(&reports, a.scan.format, out)?;
            Ok(EXIT_OK)
        }
        Command::Stability(c) => cmd_stability(c, out),
        Command::Krmap(c) => cmd_krmap(c, out),
        Command::Foliation(c) => cmd_foliation(c, out),
        Command::Verify(a) => cmd_verify(&a, out),
    }
}

fn write_json<T: Serialize + ?Sized>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "{}", to_json(value)?)?;
    Ok(())
}

fn cmd_catalog(a: CatalogArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    match a.geometry {
        None => {
            for name in catalog::NAMES {
                writeln!(out, "{name}")?;
            }
        }
        Some(geometry) => {
            let fam = FamilyArgs { geometry, params: a.params }.build(Some(2), 0.0)?;
            write_json(&fam, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn functional_for(order: u32, minimal: bool) -> Result<Functional, CliError> {
    if minimal {
        return Ok(Functional::Minimal);
    }
    Ok(Functional::of_order(order)?)
}

fn functional_name(f: Functional) -> &'static str {
    match f {
        Functional::Biharmonic => "biharmonic",
        Functional::RHarmonic { .. } => "r_harmonic",
        Functional::Minimal => "minimal",
    }
}

fn solve_one(
    family: &FamilyArgs,
    order: u32,
    cheeger_s: f64,
    scan: &ScanArgs,
) -> Result<SolveReport, CliError> {
    let start = Instant::now();
    let functional = functional_for(order, scan.minimal)?;
    let fam = family.build(Some(order), cheeger_s)?;
    let settings = RootScan { grid_points: scan.grid, tol: scan.tol, classification_tol: scan.class_tol };
    let mut roots = find_roots(&fam, functional, &settings)?;
    roots.sort_by(|a, b| a.t_root.total_cmp(&b.t_root));
    let mut params: BTreeMap<_, _> = fam.params.clone();
    params.remove(PARAM_KEY);
    let elapsed_ms = if scan.no_timing { 0.0 } else { start.elapsed().as_secs_f64() * 1e3 };
    Ok(SolveReport {
        geometry: fam.name.clone(),
        params,
        cheeger_s,
        order_r: order,
        functional: functional_name(functional).into(),
        roots,
        elapsed_ms,
    })
}

pub fn cmd_solve(a: &SolveArgs) -> Result<SolveReport, CliError> {
    solve_one(&a.family, a.order, a.cheeger_s, &a.scan)
}

/// Parses `START:END:STEP` into the inclusive list of values.
pub fn parse_range(range: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("invalid range `{range}`, expected START:END:STEP"));
    let parts: Vec<f64> =
        range.split(':').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [start, end, step] = parts[..] else { return Err(bad()) };
    if !(step > 0.0 && start.is_finite() && end.is_finite()) || end < start {
        return Err(CliError::Usage(format!("empty range `{range}`")));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<Vec<SolveReport>, CliError> {
    let jobs: Vec<(u32, f64)> = match (&a.cheeger, &a.orders) {
        (Some(range), None) => parse_range(range)?.into_iter().map(|s| (a.order, s)).collect(),
        (None, Some(orders)) if !orders.is_empty() => orders.iter().map(|&r| (r, a.cheeger_s)).collect(),
        _ => {
            return Err(CliError::Usage("sweep needs --cheeger START:END:STEP or --orders R1,R2,...".into()))
        }
    };
    // results are collected in job order regardless of scheduling
    jobs.par_iter().map(|&(r, s)| solve_one(&a.family, r, s, &a.scan)).collect()
}

fn emit_reports(reports: &[SolveReport], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => {
            if let [one] = reports {
                write_json(one, out)?;
            } else {
                write_json(reports, out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in reports {
                for rec in r.csv_records() {
                    w.write_record(&rec)?;
                }
            }
            w.flush()?;
        }
        Format::Table => {
            for r in reports {
                write!(out, "{}", r.table())?;
            }
        }
    }
    Ok(())
}

fn cmd_stability(c: StabilityCmd, out: &mut dyn Write) -> Result<i32, CliError> {
    #[derive(Serialize)]
    struct Entry {
        report: stability::StabilityReport,
        hessian_lower_bound: Option<f64>,
    }
    match c {
        StabilityCmd::Report { family, cheeger_s, t, mu } => {
            let fam = family.build(Some(2), cheeger_s)?;
            let ts: Vec<f64> = match t {
                Some(t) => vec![t],
                None => find_roots(&fam, Functional::Biharmonic, &RootScan::default())?
                    .into_iter()
                    .filter(|s| s.classification != coh1_core::solve::Classification::Minimal)
                    .map(|s| s.t_root)
                    .collect(),
            };
            let mut entries = Vec::new();
            for t in ts {
                let report = stability::stability_report(&fam, t)?;
                let bound = mu.map(|mu| stability::hessian_lower_bound(&fam, t, mu)).transpose()?;
                entries.push(Entry { report, hessian_lower_bound: bound });
            }
            write_json(&entries, out)?;
        }
        StabilityCmd::Index { n, t, atol } => {
            write_json(&stability::warped_index_nullity(n, t, atol)?, out)?;
        }
        StabilityCmd::EigenvalueBound { ricci_lower, dim_factor, max_mean_curv } => {
            if !(ricci_lower > 0.0) {
                return Err(CliError::Usage("--ricci-lower must be > 0".into()));
            }
            let bound = stability::first_eigenvalue_lower_bound(ricci_lower, dim_factor, max_mean_curv);
            writeln!(out, "{}", g17(bound))?;
        }
        StabilityCmd::Hpn { n, n_max } => {
            #[derive(Serialize)]
            struct Probe {
                n: u32,
                x_minus: f64,
                sqrt_n_times_tr_a: f64,
                tr_c_over_sqrt_n: f64,
                index_one_certified: bool,
                index_one_threshold: Option<u32>,
                n_max: u32,
            }
            let (a, c) = stability::hpn_asymptotics_probe(n)?;
            write_json(
                &Probe {
                    n,
                    x_minus: stability::hpn_x_minus(n),
                    sqrt_n_times_tr_a: a,
                    tr_c_over_sqrt_n: c,
                    index_one_certified: stability::hpn_index_one_certified(n)?,
                    index_one_threshold: stability::hpn_index_threshold_probe(n_max)?,
                    n_max,
                },
                out,
            )?;
        }
        StabilityCmd::Multiplicity { k, n } => {
            writeln!(out, "{}", stability::sphere_multiplicity(k, n)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn read_r_table(path: &PathBuf) -> Result<SampleTable, CliError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec?;
        let field = |i: usize| -> Result<f64, CliError> {
            rec.get(i)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| CliError::Usage(format!("bad r table row {:?}", rec)))
        };
        xs.push(field(0)?);
        ys.push(field(1)?);
    }
    Ok(SampleTable::new(xs, ys)?)
}

fn cmd_krmap(c: KrmapCmd, out: &mut dyn Write) -> Result<i32, CliError> {
    match c {
        KrmapCmd::Shoot { family, winding, slope_lo, slope_hi, seeds, tol, csv: path } => {
            let fam = family.build(None, 0.0)?;
            let cfg = ShootConfig { slope_range: (slope_lo, slope_hi), seeds, tol, ..Default::default() };
            let outcome = krmaps::shoot_kr(&fam, winding, &cfg)?;
            #[derive(Serialize)]
            struct Summary {
                converged: bool,
                params: Option<[f64; 4]>,
                mismatch: f64,
                iterations: usize,
                sup_distance_from_identity: Option<f64>,
                samples: usize,
            }
            let summary = match &outcome {
                ShootOutcome::Converged(sol) => Summary {
                    converged: true,
                    params: Some(sol.params),
                    mismatch: sol.mismatch,
                    iterations: sol.iterations,
                    sup_distance_from_identity: Some(sol.sup_distance_from_identity()),
                    samples: sol.samples.len(),
                },
                ShootOutcome::NoConvergence { best_mismatch, iterations } => Summary {
                    converged: false,
                    params: None,
                    mismatch: *best_mismatch,
                    iterations: *iterations,
                    sup_distance_from_identity: None,
                    samples: 0,
                },
            };
            if let (Some(path), ShootOutcome::Converged(sol)) = (path, &outcome) {
                let mut w = csv::Writer::from_writer(File::create(path)?);
                w.write_record(["t", "r", "r_dot", "F"])?;
                for s in &sol.samples {
                    w.write_record([g17(s.t), g17(s.r), g17(s.r_dot), g17(s.f)])?;
                }
                w.flush()?;
            }
            write_json(&summary, out)?;
            Ok(if summary.converged { EXIT_OK } else { EXIT_FAILURE })
        }
        KrmapCmd::Verify { family, winding, r_table, linear, points } => {
            let fam = family.build(None, 0.0)?;
            let r = match (r_table, linear) {
                (Some(path), None) => RProfile::Table { table: read_r_table(&path)? },
                (None, Some(v)) => match v[..] {
                    [slope, offset] => RProfile::Linear { slope, offset },
                    _ => return Err(CliError::Usage("--linear expects SLOPE,OFFSET".into())),
                },
                (None, None) => RProfile::identity(),
                _ => unreachable!("clap rejects conflicting map sources"),
            };
            let m = KrMap::new(fam, winding, r)?;
            write_json(&krmaps::verify(&m, points)?, out)?;
            Ok(EXIT_OK)
        }
        KrmapCmd::Degree { j, w_order, codim0, codim1 } => {
            let k = krmaps::admissible_k(j, w_order)?;
            let d = DegreeInput {
                j_parity: Parity::of(j),
                codim_n0_parity: Parity::of(i64::from(codim0)),
                codim_n1_parity: Parity::of(i64::from(codim1)),
                w_order,
            };
            #[derive(Serialize)]
            struct Degree {
                k: i64,
                degree: i64,
                branch: krmaps::DegreeBranch,
            }
            let deg =
                Degree { k, degree: krmaps::brouwer_degree(&d, k)?, branch: krmaps::degree_branch(&d)? };
            write_json(&deg, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn write_grid_csv(path: &PathBuf, rows: &[(f64, f64)]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(File::create(path)?);
    w.write_record(["t", "residual"])?;
    for (t, v) in rows {
        w.write_record([g17(*t), g17(*v)])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct GridSummary {
    points: usize,
    max_abs_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_time: Option<f64>,
}

fn cmd_foliation(c: FoliationCmd, out: &mut dyn Write) -> Result<i32, CliError> {
    match c {
        FoliationCmd::Warped { r, c1, c2, t_max, points, csv: path } => {
            if points < 2 {
                return Err(CliError::Usage("--points must be >= 2".into()));
            }
            let rows = (0..points)
                .map(|i| {
                    let t = t_max * i as f64 / (points - 1) as f64;
                    Ok((t, foliation::warped_leaf_residual(r, c1, c2, t)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            if let Some(p) = path {
                write_grid_csv(&p, &rows)?;
            }
            let max = rows.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
            write_json(&GridSummary { points, max_abs_residual: max, minimal_time: None }, out)?;
        }
        FoliationCmd::Doubly { n, m, points, csv: path } => {
            let (lo, hi) = foliation::doubly_warped_interval(n, m);
            let rows = (1..=points)
                .map(|i| {
                    let t = lo + (hi - lo) * i as f64 / (points + 1) as f64;
                    Ok((t, foliation::doubly_warped_residual(n, m, t)?))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            if let Some(p) = path {
                write_grid_csv(&p, &rows)?;
            }
            let max = rows.iter().map(|r| r.1.abs()).fold(0.0, f64::max);
            let t_star = foliation::doubly_warped_minimal_time(n, m);
            write_json(&GridSummary { points, max_abs_residual: max, minimal_time: Some(t_star) }, out)?;
        }
        FoliationCmd::Torus { a, d, samples } => {
            let cubic = foliation::torus_family(a, d)?;
            #[derive(Serialize)]
            struct Torus {
                cubic: foliation::TorusCubic,
                proper: bool,
                c0_periodic: bool,
                c1_periodic: bool,
                partition: bool,
                samples: usize,
            }
            let rep = Torus {
                cubic,
                proper: cubic.is_proper(),
                c0_periodic: cubic.is_c0_periodic(),
                c1_periodic: cubic.is_c1_periodic(),
                partition: foliation::torus_partition_check(a, samples)?,
                samples,
            };
            let ok = rep.c1_periodic && rep.partition;
            write_json(&rep, out)?;
            return Ok(if ok { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let results = verify::run_checks(a.filter.as_deref());
    if results.is_empty() {
        return Err(CliError::Usage(format!("no check matches `{}`", a.filter.as_deref().unwrap_or(""))));
    }
    Ok(print_results(&results, out)?)
}

/// Prints one line per check plus a summary; returns the exit code.
pub fn print_results(results: &[verify::CheckResult], out: &mut dyn Write) -> io::Result<i32> {
    for r in results {
        writeln!(out, "{}", r.line())?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let total_ms: f64 = results.iter().map(|r| r.elapsed_ms).sum();
    writeln!(out, "{} of {} checks passed ({} ms)", results.len() - failed, results.len(), g6(total_ms))?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}
