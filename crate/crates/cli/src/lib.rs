//! Command-line front end for the `torus_radon` library.
//!
//! Exit codes: 0 success, 1 oracle mismatch, 2 configuration or load error,
//! 3 bad user input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use torus_radon::funk_numeric::{self, FunkError};
use torus_radon::radon_kernel::{
    dominant_analytic, enumerate_spherical, in_kernel, is_transform_injective, support_of, InjectivityCertificate,
    KernelError, KernelVerdict,
};
use torus_radon::rational::{fmt_q, DisplayVec, Q};
use torus_radon::rep_oracle::{build_algebra, observe, MatrixAlgebra, OracleError};
use torus_radon::root_core::{RootError, Weight};
use torus_radon::space_catalog::{bundled_catalog, load_catalog, Space};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest accepted `--bound`.
pub const MAX_BOUND: u32 = 60;
/// Smallest `|R_A(v, v)|` accepted as "non-zero" when the verdict says the
/// representation survives the transform.
pub const REYNOLDS_FLOOR: f64 = 1e-3;
/// Random circles per degree in numeric checks.
pub const FUNK_TRIALS: usize = 50;

#[derive(Debug, Parser)]
#[command(name = "torus-radon", version, about = "Kernel and injectivity of the maximal flat Radon transform")]
pub struct Cli {
    /// Catalog file (default: the bundled catalog).
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Absolute tolerance for numeric checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List catalog entries.
    Catalog,
    /// Restricted roots, lattices and injectivity of one space.
    Analyze {
        space: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Classify V(omega), omega given in fundamental-weight coordinates.
    TestWeight {
        space: String,
        #[arg(required = true, allow_negative_numbers = true)]
        coords: Vec<String>,
    },
    /// Classify every spherical V(omega) with coordinate sum at most the bound.
    Enumerate {
        space: String,
        #[arg(long)]
        bound: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: TableFormat,
    },
    /// Cross-check the symbolic verdicts against the numerical oracles.
    Verify {
        space: String,
        #[arg(long)]
        bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Great-circle transform of spherical harmonics of degree up to `l`.
    Funk {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        samples: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

#[derive(Debug)]
pub enum CliError {
    Mismatch(String),
    Config(String),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Config(_) => 2,
            CliError::Input(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Mismatch(m) | CliError::Config(m) | CliError::Input(m) => m,
        }
    }
}

fn kernel_error(e: KernelError) -> CliError {
    match e {
        KernelError::Inconsistent(m) => CliError::Mismatch(m),
        KernelError::Root(RootError::NotDominant(_) | RootError::NotAnalytic(_) | RootError::DimensionMismatch { .. })
        | KernelError::NotSpherical(_)
        | KernelError::NotAntiInvariant(_)
        | KernelError::NotAWeight { .. } => CliError::Input(e.to_string()),
        other => CliError::Config(other.to_string()),
    }
}

fn funk_error(e: FunkError) -> CliError {
    CliError::Input(e.to_string())
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::Config(format!("write failed: {e}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleStatus {
    Unchecked,
    Confirmed,
    Mismatch,
}

impl OracleStatus {
    fn as_str(self) -> &'static str {
        match self {
            OracleStatus::Unchecked => "unchecked",
            OracleStatus::Confirmed => "confirmed",
            OracleStatus::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub space: String,
    /// Fundamental-weight coordinates.
    pub omega: Vec<i64>,
    pub verdict: String,
    pub certificate: String,
    pub oracle: OracleStatus,
}

/// Flat form of [`ReportRow`] for CSV, with `omega` space-separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub space: String,
    pub omega: String,
    pub verdict: String,
    pub certificate: String,
    pub oracle: OracleStatus,
}

impl From<&ReportRow> for CsvRow {
    fn from(r: &ReportRow) -> Self {
        CsvRow {
            space: r.space.clone(),
            omega: r.omega.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
            verdict: r.verdict.clone(),
            certificate: r.certificate.clone(),
            oracle: r.oracle,
        }
    }
}

impl TryFrom<CsvRow> for ReportRow {
    type Error = std::num::ParseIntError;
    fn try_from(r: CsvRow) -> Result<Self, Self::Error> {
        let omega = r.omega.split_whitespace().map(str::parse).collect::<Result<_, _>>()?;
        Ok(ReportRow { space: r.space, omega, verdict: r.verdict, certificate: r.certificate, oracle: r.oracle })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub schema: u32,
    pub space: String,
    pub bound: u32,
    pub rows: Vec<ReportRow>,
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<ReportRow>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize::<CsvRow>()
        .map(|row| {
            let row = row.map_err(|e| e.to_string())?;
            ReportRow::try_from(row).map_err(|e| e.to_string())
        })
        .collect()
}

fn q_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub schema: u32,
    pub space: String,
    pub root_system: String,
    pub flavor: String,
    pub restricted_positive: Vec<Vec<String>>,
    pub restricted_simple: Vec<Vec<String>>,
    pub lambda: Vec<Vec<String>>,
    pub lambda_hat: Vec<Vec<String>>,
    pub lambda_rank: usize,
    /// `[Lambda hat : Lambda]`.
    pub index: String,
    pub spherical_lattice: Vec<Vec<String>>,
    pub injective: bool,
    pub certificate_kind: String,
    pub certificate: String,
    /// Fundamental-weight coordinates of the witness, when not injective.
    pub witness: Option<Vec<i64>>,
}

pub fn analyze(space: &Space) -> Result<Analysis, CliError> {
    let report = is_transform_injective(space).map_err(kernel_error)?;
    if !report.verify(space) {
        return Err(CliError::Mismatch(format!("{}: injectivity certificate does not re-verify", space.name())));
    }
    let vecs = |vs: &[Vec<Q>]| vs.iter().map(|v| q_strings(v)).collect::<Vec<_>>();
    let (kind, witness) = match &report.certificate {
        InjectivityCertificate::Containment { .. } => ("containment", None),
        InjectivityCertificate::Witness { labels, .. } => ("witness", Some(labels.clone())),
    };
    Ok(Analysis {
        schema: SCHEMA_VERSION,
        space: space.name().to_string(),
        root_system: space.rs().label(),
        flavor: space.flavor().to_string(),
        restricted_positive: vecs(&space.restricted.sigma_positive),
        restricted_simple: vecs(&space.restricted.simple),
        lambda: vecs(&space.lambda().basis()),
        lambda_hat: vecs(&space.lambda_hat().basis()),
        lambda_rank: space.lambda().rank(),
        index: space.lattice_index().map_or_else(|| "infinite".to_string(), |i| i.to_string()),
        spherical_lattice: vecs(&report.spherical_lattice.basis()),
        injective: report.injective,
        certificate_kind: kind.to_string(),
        certificate: report.summary(),
        witness,
    })
}

fn render_analysis(a: &Analysis) -> String {
    let list = |vs: &[Vec<String>]| vs.iter().map(|v| format!("({})", v.join(", "))).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    s += &format!("space: {}\n", a.space);
    s += &format!("root system: {}\n", a.root_system);
    s += &format!("flavor: {}\n", a.flavor);
    s += &format!("restricted positive roots: {}\n", list(&a.restricted_positive));
    s += &format!("simple restricted roots: {}\n", list(&a.restricted_simple));
    s += &format!("Lambda basis: {}\n", list(&a.lambda));
    s += &format!("Lambda rank: {}\n", a.lambda_rank);
    s += &format!("Lambda hat basis: {}\n", list(&a.lambda_hat));
    s += &format!("index [Lambda hat : Lambda]: {}\n", a.index);
    s += &format!("spherical lattice basis: {}\n", list(&a.spherical_lattice));
    s += &format!("injective: {}\n", if a.injective { "yes" } else { "no" });
    s += &format!("certificate ({}): {}\n", a.certificate_kind, a.certificate);
    s
}

fn find_space(spaces: Vec<Space>, name: &str) -> Result<Space, CliError> {
    let known: Vec<String> = spaces.iter().map(|s| s.name().to_string()).collect();
    spaces
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| CliError::Config(format!("unknown space '{name}' (known: {})", known.join(", "))))
}

fn check_bound(bound: u32) -> Result<(), CliError> {
    if bound > MAX_BOUND {
        return Err(CliError::Input(format!("bound {bound} exceeds the maximum {MAX_BOUND}")));
    }
    Ok(())
}

fn parse_coords(space: &Space, coords: &[String]) -> Result<(Vec<i64>, Weight), CliError> {
    let rank = space.rs().rank();
    if coords.len() != rank {
        return Err(CliError::Input(format!("{} has rank {rank}, got {} coordinates", space.name(), coords.len())));
    }
    let labels = coords
        .iter()
        .map(|c| c.trim().parse::<i64>().map_err(|_| CliError::Input(format!("coordinate '{c}' is not an integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(c) = labels.iter().find(|&&c| c < 0) {
        return Err(CliError::Input(format!("omega is not dominant: coordinate {c} is negative")));
    }
    let omega = space.rs().weight_from_dynkin(&labels).map_err(|e| CliError::Input(e.to_string()))?;
    if !space.spec.analytic_lattice.contains(&omega.0).map_err(|e| CliError::Config(e.to_string()))? {
        return Err(CliError::Input(format!(
            "omega = {omega} is not in the analytic lattice of {}; no such representation on this space",
            space.name()
        )));
    }
    Ok((labels, omega))
}

fn row(space: &Space, labels: Vec<i64>, verdict: &KernelVerdict, oracle: OracleStatus) -> ReportRow {
    ReportRow {
        space: space.name().to_string(),
        omega: labels,
        verdict: verdict.label().to_string(),
        certificate: verdict.certificate(),
        oracle,
    }
}

pub fn enumerate_table(space: &Space, bound: u32) -> Result<Table, CliError> {
    check_bound(bound)?;
    let rows = enumerate_spherical(space, bound)
        .map_err(kernel_error)?
        .into_iter()
        .map(|c| row(space, c.labels, &c.verdict, OracleStatus::Unchecked))
        .collect();
    Ok(Table { schema: SCHEMA_VERSION, space: space.name().to_string(), bound, rows })
}

/// One oracle's answer for one weight.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Agree,
    Disagree(String),
    Skipped(String),
}

fn check_matrix_model(alg: &MatrixAlgebra, space: &Space, omega: &Weight, verdict: &KernelVerdict, tol: f64) -> Check {
    let seen = match observe(alg, space.flavor(), omega) {
        Ok(s) => s,
        Err(e @ OracleError::Unreachable { .. }) => return Check::Skipped(e.to_string()),
        Err(e) => return Check::Disagree(format!("matrix oracle failed: {e}")),
    };
    let spherical = !matches!(verdict, KernelVerdict::NotSpherical);
    if seen.spherical != spherical {
        return Check::Disagree(format!(
            "symbolic: spherical = {spherical}; matrix oracle: spherical = {} ({} k-invariants)",
            seen.spherical, seen.k_invariants
        ));
    }
    if !spherical {
        return Check::Agree;
    }
    let predicted = match support_of(space, omega) {
        Ok(s) => s,
        Err(e) => return Check::Disagree(e.to_string()),
    };
    let found = seen.support.unwrap_or_default();
    if found != predicted {
        let show = |ws: &[Weight]| ws.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        return Check::Disagree(format!(
            "symbolic support: {}; matrix oracle support: {}",
            show(&predicted),
            show(&found)
        ));
    }
    let dual = match space.rs().dual_highest_weight(omega) {
        Ok(d) => d,
        Err(e) => return Check::Disagree(e.to_string()),
    };
    let dual_killed = match in_kernel(space, &dual) {
        Ok(v) => matches!(v, KernelVerdict::InKernel { .. }),
        Err(e) => return Check::Disagree(e.to_string()),
    };
    let r = seen.reynolds.unwrap_or(f64::NAN);
    let ok = if dual_killed { r <= tol } else { r >= REYNOLDS_FLOOR };
    if ok {
        Check::Agree
    } else {
        Check::Disagree(format!("symbolic: dual in kernel = {dual_killed}; torus average |R_A(v, v)| = {r:e}"))
    }
}

/// Whether the space is the 2-sphere or its quotient: `A1` with `theta = -1`.
fn is_two_sphere(space: &Space) -> bool {
    let rs = space.rs();
    rs.label() == "A1" && rs.simple_roots().iter().all(|a| space.theta(a) == torus_radon::rational::neg(a))
}

fn check_funk(labels: &[i64], verdict: &KernelVerdict, seed: u64, tol: f64) -> Check {
    if matches!(verdict, KernelVerdict::NotSpherical) {
        return Check::Skipped("not spherical".into());
    }
    // omega = l * alpha carries the degree-l harmonics
    let l = u32::try_from(labels[0] / 2).expect("non-negative label");
    if l > funk_numeric::MAX_DEGREE {
        return Check::Skipped(format!("degree {l} above {}", funk_numeric::MAX_DEGREE));
    }
    let fit = match funk_numeric::funk_hecke_ratio(l, FUNK_TRIALS, funk_numeric::default_samples(l), seed) {
        Ok(f) => f,
        Err(e) => return Check::Disagree(e.to_string()),
    };
    let killed = matches!(verdict, KernelVerdict::InKernel { .. });
    let numeric_killed = fit.max_transform <= tol;
    if killed == numeric_killed {
        Check::Agree
    } else {
        Check::Disagree(format!(
            "symbolic: in kernel = {killed}; great-circle quadrature: max |transform| = {:e}",
            fit.max_transform
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    #[serde(flatten)]
    pub row: ReportRow,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub space: String,
    pub bound: u32,
    pub oracles: Vec<String>,
    pub rows: Vec<VerifyRow>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &VerifyRow> {
        self.rows.iter().filter(|r| r.row.oracle == OracleStatus::Mismatch)
    }
}

pub fn verify(space: &Space, bound: u32, seed: u64, tol: f64) -> Result<VerifyReport, CliError> {
    check_bound(bound)?;
    let mut warnings = Vec::new();
    let mut oracles = Vec::new();
    let alg = match &space.spec.model {
        Some(name) => {
            let alg = build_algebra(name).map_err(|e| CliError::Config(format!("model '{name}': {e}")))?;
            if alg.rs.simple_roots() != space.rs().simple_roots() || alg.rs.gram() != space.rs().gram() {
                return Err(CliError::Config(format!(
                    "model '{name}' realizes {}, but {} is built on {}",
                    alg.rs.label(),
                    space.name(),
                    space.rs().label()
                )));
            }
            oracles.push(format!("matrix model {name}"));
            Some(alg)
        }
        None => {
            warnings.push(format!("{} has no matrix model; representation rows are unchecked", space.name()));
            None
        }
    };
    let sphere = is_two_sphere(space);
    if sphere {
        oracles.push("great-circle quadrature".into());
    }
    let mut rows = Vec::new();
    for (labels, omega) in dominant_analytic(space, bound).map_err(kernel_error)? {
        let verdict = in_kernel(space, &omega).map_err(kernel_error)?;
        let mut checks = Vec::new();
        if let Some(alg) = &alg {
            checks.push(("matrix", check_matrix_model(alg, space, &omega, &verdict, tol)));
        }
        if sphere {
            checks.push(("quadrature", check_funk(&labels, &verdict, seed, tol)));
        }
        let mut notes = Vec::new();
        let mut status = OracleStatus::Unchecked;
        for (name, c) in checks {
            match c {
                Check::Agree => {
                    if status == OracleStatus::Unchecked {
                        status = OracleStatus::Confirmed;
                    }
                }
                Check::Disagree(m) => {
                    status = OracleStatus::Mismatch;
                    notes.push(format!("{name}: {m}"));
                }
                Check::Skipped(m) => notes.push(format!("{name} skipped: {m}")),
            }
        }
        rows.push(VerifyRow { row: row(space, labels, &verdict, status), notes });
    }
    if rows.iter().any(|r| r.row.oracle == OracleStatus::Unchecked) && alg.is_some() {
        warnings.push("some rows could not be checked by any oracle".into());
    }
    Ok(VerifyReport { schema: SCHEMA_VERSION, space: space.name().to_string(), bound, oracles, rows, warnings })
}

fn render_verify(report: &VerifyReport) -> String {
    let mut s = format!("space: {}  bound: {}\n", report.space, report.bound);
    let oracles = if report.oracles.is_empty() { "none".to_string() } else { report.oracles.join(", ") };
    s += &format!("oracles: {oracles}\n");
    for r in &report.rows {
        let omega = r.row.omega.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        s += &format!("[{omega}]  {}  {}\n", r.row.verdict, r.row.oracle.as_str());
        for n in &r.notes {
            s += &format!("    {n}\n");
        }
    }
    let count = |st| report.rows.iter().filter(|r| r.row.oracle == st).count();
    s += &format!(
        "confirmed: {}  unchecked: {}  mismatch: {}\n",
        count(OracleStatus::Confirmed),
        count(OracleStatus::Unchecked),
        count(OracleStatus::Mismatch)
    );
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunkTableRow {
    pub l: u32,
    pub m: i32,
    pub ratio: f64,
    pub residual: f64,
    pub expected: f64,
    pub status: OracleStatus,
}

pub fn funk_rows(lmax: u32, samples: usize, seed: u64, tol: f64) -> Result<Vec<FunkTableRow>, CliError> {
    if samples <= 2 * lmax as usize {
        // the trapezoid rule is only exact above 2l samples
        log_warning(&format!("{samples} samples per circle are not exact for degree {lmax}"));
    }
    let rows = funk_numeric::funk_table(lmax, FUNK_TRIALS, samples, seed).map_err(funk_error)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let ok = (r.ratio - r.expected).abs() <= tol && r.residual <= tol;
            FunkTableRow {
                l: r.l,
                m: r.m,
                ratio: r.ratio,
                residual: r.residual,
                expected: r.expected,
                status: if ok { OracleStatus::Confirmed } else { OracleStatus::Mismatch },
            }
        })
        .collect())
}

fn log_warning(msg: &str) {
    eprintln!("warning: {msg}");
}

fn load(cli: &Cli) -> Result<Vec<Space>, CliError> {
    match &cli.catalog {
        Some(path) => load_catalog(path).map_err(|e| CliError::Config(e.to_string())),
        None => Ok(bundled_catalog()),
    }
}

fn catalog_listing(spaces: &[Space]) -> String {
    let mut s = format!(
        "{:<14} {:<8} {:>4} {:>6} {:>7}  {:<6} {:<8} {}\n",
        "name", "system", "rank", "dim a", "|Sigma+|", "flavor", "model", "comment"
    );
    for sp in spaces {
        s += &format!(
            "{:<14} {:<8} {:>4} {:>6} {:>7}  {:<6} {:<8} {}\n",
            sp.name(),
            sp.rs().label(),
            sp.rs().rank(),
            sp.restricted.a_dim(),
            sp.restricted.sigma_positive.len(),
            sp.flavor().to_string(),
            sp.spec.model.as_deref().unwrap_or("-"),
            sp.spec.comment
        );
    }
    s
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report") + "\n"
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    if !(cli.tolerance.is_finite() && cli.tolerance > 0.0) {
        return Err(CliError::Input(format!("tolerance must be positive, got {}", cli.tolerance)));
    }
    let spaces = load(cli)?;
    match &cli.command {
        Command::Catalog => out.write_all(catalog_listing(&spaces).as_bytes()).map_err(io_error)?,
        Command::Analyze { space, format } => {
            let space = find_space(spaces, space)?;
            let a = analyze(&space)?;
            let text = match format {
                ReportFormat::Text => render_analysis(&a),
                ReportFormat::Json => to_json(&a),
            };
            out.write_all(text.as_bytes()).map_err(io_error)?;
        }
        Command::TestWeight { space, coords } => {
            let space = find_space(spaces, space)?;
            let (labels, omega) = parse_coords(&space, coords)?;
            let verdict = in_kernel(&space, &omega).map_err(kernel_error)?;
            let l = labels.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            let mut s = format!("space: {}\nomega: [{l}] = {}\nverdict: {}\n", space.name(), DisplayVec(&omega.0), verdict.label());
            let cert = verdict.certificate();
            if !cert.is_empty() {
                s += &format!("certificate: {cert}\n");
            }
            out.write_all(s.as_bytes()).map_err(io_error)?;
        }
        Command::Enumerate { space, bound, format } => {
            let space = find_space(spaces, space)?;
            let table = enumerate_table(&space, *bound)?;
            match format {
                TableFormat::Json => out.write_all(to_json(&table).as_bytes()).map_err(io_error)?,
                TableFormat::Csv => write_csv(&table.rows, out).map_err(|e| CliError::Config(e.to_string()))?,
            }
        }
        Command::Verify { space, bound, format } => {
            let space = find_space(spaces, space)?;
            let report = verify(&space, *bound, cli.seed, cli.tolerance)?;
            for w in &report.warnings {
                writeln!(err, "warning: {w}").map_err(io_error)?;
            }
            let text = match format {
                ReportFormat::Text => render_verify(&report),
                ReportFormat::Json => to_json(&report),
            };
            out.write_all(text.as_bytes()).map_err(io_error)?;
            let first = report.mismatches().next().cloned();
            if let Some(bad) = first {
                let omega = bad.row.omega.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
                let total = report.mismatches().count();
                return Err(CliError::Mismatch(format!(
                    "{total} oracle mismatch(es); first at omega = [{omega}]: {}",
                    bad.notes.join("; ")
                )));
            }
        }
        Command::Funk { l, samples, format } => {
            let rows = funk_rows(*l, *samples, cli.seed, cli.tolerance)?;
            match format {
                TableFormat::Json => out.write_all(to_json(&rows).as_bytes()).map_err(io_error)?,
                TableFormat::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    for r in &rows {
                        w.serialize(r).map_err(|e| CliError::Config(e.to_string()))?;
                    }
                    w.flush().map_err(io_error)?;
                }
            }
            if let Some(bad) = rows.iter().find(|r| r.status == OracleStatus::Mismatch) {
                return Err(CliError::Mismatch(format!(
                    "l = {}, m = {}: ratio {:e} vs P_l(0) = {:e}, residual {:e}",
                    bad.l, bad.m, bad.ratio, bad.expected, bad.residual
                )));
            }
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}
