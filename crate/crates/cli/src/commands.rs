use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Subcommand};
use lumpcheck_core::catalog::{energy, parse_binding, to_bnew, verify_tau_with, Bindings, Catalog, TauRecord};
use lumpcheck_core::classifier::{
    hierarchy_degree, scan, solve_degree, uniqueness_certificate, PairCounting, Routes, ScanRow,
};
use lumpcheck_core::cm::{cm_check, LOCUS_TOL};
use lumpcheck_core::hirota::{BilinearForm, FormPreset};
use lumpcheck_core::lax::{compare_phase_table, exact_eigenvalues, phase_table, removable_probe, SpectralPoint};
use lumpcheck_core::polyring::interchange::read_file;
use lumpcheck_core::polyring::{format_rational, parse_rational, Basis};
use lumpcheck_core::Error;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{Outcome, RunReport, Timing, Verdict};

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Hirota residual of a catalog τ or a polynomial file.
    Verify(VerifyArgs),
    /// Degree obstructions J_n and σ for n = 1..max-n, as CSV.
    ScanJn(ScanArgs),
    /// γ constants certifying uniqueness of the even solution for triangular n.
    Certify(CertifyArgs),
    /// Calogero–Moser locus and flow residuals of the poles of τ.
    CmCheck(CmArgs),
    /// The twelve phases at the eigenvalue collision points.
    LaxTable,
    /// Φ₁₂ and Φ₂₂ approaching a collision point.
    LaxProbe(ProbeArgs),
    /// Midpoint-rule energy of q = (3/2)∂ₓ² ln τ(x, √3 y).
    Energy(EnergyArgs),
    /// Degree balance m = −(3/2)k(k+1).
    Degree(DegreeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TauArgs {
    /// Catalog id or path to a polynomial file.
    #[arg(long)]
    pub tau: String,
    /// Parameter binding `name=value`, repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// `u = c ∂ₓ² ln τ` for τ read from a file.
    #[arg(long, default_value = "2")]
    pub scale_c: String,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tau: TauArgs,
    /// Preset (standard, even-section, yang, bnew) or `weight:a:b,...`; defaults to the record's own form.
    #[arg(long)]
    pub form: Option<String>,
    /// Residual terms to list.
    #[arg(long, default_value_t = 10)]
    pub max_terms: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub max_n: u64,
    #[arg(long, default_value = "J,sigma")]
    pub routes: String,
    #[arg(long, value_enum, default_value_t = CountingArg::Ordered)]
    pub counting: CountingArg,
    /// CSV destination; without it the CSV goes to stdout and the report to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountingArg {
    Ordered,
    Unordered,
}

impl From<CountingArg> for PairCounting {
    fn from(c: CountingArg) -> Self {
        match c {
            CountingArg::Ordered => PairCounting::Ordered,
            CountingArg::Unordered => PairCounting::Unordered,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct CmArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tau: TauArgs,
    #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2")]
    pub y: Vec<f64>,
    #[arg(long, default_value_t = LOCUS_TOL)]
    pub tol: f64,
    /// Take τ as given instead of rescaling y by √3.
    #[arg(long)]
    pub no_rescale: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ProbeArgs {
    #[arg(long, default_value = "k1+")]
    pub point: String,
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5,1e-6")]
    pub eps: Vec<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct EnergyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tau: TauArgs,
    /// Half-width of the square [−R, R]².
    #[arg(long = "R", alias = "radius", default_value_t = 200.0)]
    pub half_width: f64,
    /// Grid step.
    #[arg(long, default_value_t = 0.05)]
    pub h: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct DegreeArgs {
    #[arg(long)]
    pub k: u64,
}

/// A failure that is the caller's fault (exit code 2) or a computation error (exit code 1).
#[derive(Debug)]
pub struct CommandError {
    pub error: Error,
    pub usage: bool,
}

impl From<Error> for CommandError {
    fn from(error: Error) -> Self {
        let usage = matches!(
            error,
            Error::UnknownTau(_)
                | Error::UnknownForm(_)
                | Error::UnboundParameter(_)
                | Error::MalformedRational(_)
                | Error::Format(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::OddOrder { .. }
                | Error::ZeroWeight { .. }
                | Error::Precondition(_)
        );
        Self { error, usage }
    }
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error.fmt(f)
    }
}

type CmdResult = Result<Outcome, CommandError>;

fn bindings(params: &[String]) -> Result<Bindings, Error> {
    params.iter().map(|p| parse_binding(p)).collect()
}

/// A catalog record by id, or a parameter-free record around a polynomial file.
pub fn resolve_tau(args: &TauArgs) -> Result<TauRecord, Error> {
    let catalog = Catalog::builtin();
    if let Ok(rec) = catalog.get(&args.tau) {
        return Ok(rec.clone());
    }
    let path = Path::new(&args.tau);
    if !path.exists() {
        return Err(Error::UnknownTau(args.tau.clone()));
    }
    let mut poly = read_file(path)?;
    if poly.basis() == Basis::ZZbar {
        poly = poly.to_xy()?;
    }
    let preset = FormPreset::Standard;
    Ok(TauRecord::from_poly(&args.tau, poly, parse_rational(&args.scale_c)?, preset.name(), preset.form()))
}

fn resolve_form(spec: &str) -> Result<(String, BilinearForm), Error> {
    if spec.contains(':') {
        Ok(("custom".to_string(), BilinearForm::parse_custom(Basis::XY, spec)?))
    } else {
        let preset: FormPreset = spec.parse()?;
        Ok((preset.name().to_string(), preset.form()))
    }
}

fn finish(
    command: &Command,
    started: Instant,
    results: Value,
    exact: bool,
    verdict: Verdict,
    table: Option<String>,
) -> Outcome {
    let inputs = serde_json::to_value(command).unwrap_or(Value::Null);
    let name = inputs.get("subcommand").and_then(Value::as_str).unwrap_or("").to_string();
    let report = RunReport {
        command: name,
        inputs,
        results,
        timing: Timing::new(started.elapsed(), rayon::current_num_threads()),
        exact,
    };
    Outcome { report, verdict, table }
}

pub fn run(command: &Command) -> CmdResult {
    let started = Instant::now();
    match command {
        Command::Verify(a) => cmd_verify(command, a, started),
        Command::ScanJn(a) => cmd_scan_jn(command, a, started),
        Command::Certify(a) => cmd_certify(command, a, started),
        Command::CmCheck(a) => cmd_cm_check(command, a, started),
        Command::LaxTable => cmd_lax_table(command, started),
        Command::LaxProbe(a) => cmd_lax_probe(command, a, started),
        Command::Energy(a) => cmd_energy(command, a, started),
        Command::Degree(a) => cmd_degree(command, a, started),
    }
}

fn cmd_verify(command: &Command, a: &VerifyArgs, started: Instant) -> CmdResult {
    let rec = resolve_tau(&a.tau)?;
    let b = bindings(&a.tau.params)?;
    let (form_name, form) = match &a.form {
        Some(spec) => resolve_form(spec)?,
        None => (rec.form_name.clone(), rec.form.clone()),
    };
    let v = verify_tau_with(&rec, &b, &form_name, &form)?;
    let results = json!({
        "id": v.id,
        "form": v.form,
        "is_solution": v.is_solution,
        "residual_term_count": v.residual.len(),
        "residual_terms": v.residual_terms(a.max_terms),
        "note": rec.note,
    });
    Ok(finish(command, started, results, true, Verdict::from_bool(v.is_solution), None))
}

fn opt_rat(r: Option<&num_rational::BigRational>) -> String {
    r.map(format_rational).unwrap_or_default()
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|v| v.to_string()).unwrap_or_default()
}

pub fn scan_csv(rows: &[ScanRow]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Format(e.to_string());
    w.write_record(["n", "J_n", "sigma_obstruction", "is_zero", "is_triangular", "gamma_all_nonzero", "error"])
        .map_err(io)?;
    for row in rows {
        let n = row.n.to_string();
        match &row.outcome {
            Ok(t) => w
                .write_record([
                    n,
                    opt_rat(t.j.as_ref()),
                    opt_rat(t.sigma_obstruction()),
                    t.is_zero().to_string(),
                    t.is_triangular.to_string(),
                    opt_bool(t.verdicts.unique_even),
                    String::new(),
                ])
                .map_err(io)?,
            Err(e) => w
                .write_record([n, String::new(), String::new(), String::new(), String::new(), String::new(), e.clone()])
                .map_err(io)?,
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

fn cmd_scan_jn(command: &Command, a: &ScanArgs, started: Instant) -> CmdResult {
    let routes: Routes = a.routes.parse()?;
    if a.max_n == 0 {
        return Err(Error::Precondition("--max-n must be at least 1".into()).into());
    }
    let rows = scan(a.max_n, routes, a.counting.into());
    let table = scan_csv(&rows)?;

    let zeros_by = |pick: &dyn Fn(&lumpcheck_core::classifier::ObstructionTable) -> Option<bool>| -> Vec<u64> {
        rows.iter().filter_map(|r| r.outcome.as_ref().ok()).filter(|t| pick(t) == Some(true)).map(|t| t.n).collect()
    };
    let triangulars: Vec<u64> = (1..=a.max_n).filter(|&n| lumpcheck_core::classifier::is_triangular(n)).collect();
    let zeros_j = routes.j.then(|| zeros_by(&|t| t.verdicts.degree_admissible));
    let zeros_sigma = routes.sigma.then(|| zeros_by(&|t| t.verdicts.sigma_obstruction_zero));
    let errors: Vec<Value> =
        rows.iter().filter_map(|r| r.outcome.as_ref().err().map(|e| json!({"n": r.n, "error": e}))).collect();
    let law_holds = errors.is_empty()
        && zeros_j.as_ref().is_none_or(|z| *z == triangulars)
        && zeros_sigma.as_ref().is_none_or(|z| *z == triangulars);
    let gamma_failures: Vec<u64> = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok())
        .filter(|t| t.verdicts.unique_even == Some(false))
        .map(|t| t.n)
        .collect();
    let results = json!({
        "max_n": a.max_n,
        "routes": routes.to_string(),
        "counting": a.counting,
        "rows": rows.len(),
        "zeros_J": zeros_j,
        "zeros_sigma": zeros_sigma,
        "triangulars": triangulars,
        "triangular_law_holds": law_holds,
        "gamma_failures": gamma_failures,
        "errors": errors,
        "out": a.out,
    });
    let ok = law_holds && gamma_failures.is_empty();
    Ok(finish(command, started, results, true, Verdict::from_bool(ok), Some(table)))
}

fn cmd_certify(command: &Command, a: &CertifyArgs, started: Instant) -> CmdResult {
    let cert = uniqueness_certificate(a.n)?;
    let ok = cert.all_nonzero;
    let results = serde_json::to_value(&cert).map_err(Error::from)?;
    Ok(finish(command, started, results, true, Verdict::from_bool(ok), None))
}

fn cmd_cm_check(command: &Command, a: &CmArgs, started: Instant) -> CmdResult {
    let rec = resolve_tau(&a.tau)?;
    let b = bindings(&a.tau.params)?;
    let tau = if a.no_rescale { rec.tau(&b)? } else { to_bnew(&rec, &b)? };
    let rows = cm_check(&tau, &a.y)?;
    let ok = rows.iter().all(|r| r.max_locus_residual <= a.tol && r.max_tangent_residual_of_flow <= a.tol);
    let results = json!({ "id": rec.id, "rescaled": !a.no_rescale, "tol": a.tol, "rows": rows, "passed": ok });
    Ok(finish(command, started, results, false, Verdict::from_bool(ok), None))
}

fn cmd_lax_table(command: &Command, started: Instant) -> CmdResult {
    let comparisons = compare_phase_table();
    let matching = comparisons.iter().filter(|c| c.matches).count();
    let singular: Vec<Value> = SpectralPoint::ALL
        .iter()
        .map(|&p| {
            json!({
                "point": p,
                "k_over_i": p.k_exact(),
                "eigenvalues": exact_eigenvalues(p),
            })
        })
        .collect();
    let display: Vec<String> = phase_table().iter().map(ToString::to_string).collect();
    let results = json!({
        "singular_points": singular,
        "phases": display,
        "comparisons": comparisons,
        "matching": matching,
        "total": comparisons.len(),
    });
    let ok = matching == comparisons.len();
    Ok(finish(command, started, results, true, Verdict::from_bool(ok), None))
}

fn cmd_lax_probe(command: &Command, a: &ProbeArgs, started: Instant) -> CmdResult {
    let point: SpectralPoint = a.point.parse()?;
    let rows = removable_probe(point, a.x, &a.eps)?;
    let results = json!({ "point": point, "x": a.x, "rows": rows });
    Ok(finish(command, started, results, false, Verdict::Pass, None))
}

fn cmd_energy(command: &Command, a: &EnergyArgs, started: Instant) -> CmdResult {
    let rec = resolve_tau(&a.tau)?;
    let b = bindings(&a.tau.params)?;
    let e = energy(&rec, &b, a.half_width, a.h)?;
    let results = json!({ "id": rec.id, "energy": e });
    Ok(finish(command, started, results, false, Verdict::Pass, None))
}

fn cmd_degree(command: &Command, a: &DegreeArgs, started: Instant) -> CmdResult {
    let m = solve_degree(a.k);
    let balance = hierarchy_degree(2 * a.k, &m);
    let ok = balance.balanced && !(a.k > 0 && m.is_zero());
    let results = json!({
        "k": a.k,
        "m": format_rational(&m),
        "tau_degree": a.k * (a.k + 1),
        "balance": balance,
    });
    Ok(finish(command, started, results, true, Verdict::from_bool(ok), None))
}
