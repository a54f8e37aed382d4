//! Command-line front end.
//!
//! Every command reads a measure (a generator spec, a measure JSON file, or a
//! PGM image), runs one analysis, and writes CSV and/or JSON. Output depends
//! only on the arguments, so repeated runs produce identical bytes.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 for numeric failures
//! (scales out of floating range, degenerate series, failed bound checks).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dimension::{estimate_orders, sample_series};
use crate::error::{Error, Result};
use crate::filterops::{check_slope_bounds, lq_norm, norm_derivative, QuadratureSpec};
use crate::kernels::RadialKernel;
use crate::measures::DiscreteMeasure;
use crate::partitions::{evaluate_ln, PartitionKind, KIND_NAMES};
use crate::schedule::{run_schedule, ScaleSchedule, ScheduleKind};

#[derive(Debug, Parser)]
#[command(name = "renyi", version, about = "Filtered norms, Renyi dimensions and scale schedules of atomic measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a measure and write it as JSON
    Gen(GenArgs),
    /// Estimate Renyi dimensions from one or more partition functions
    Estimate(EstimateArgs),
    /// Compare analytic log-log slopes of ||g_eps * mu||_q with finite differences and bounds
    DerivativeCheck(DerivativeArgs),
    /// Norm differences along a power-law or geometric scale schedule
    Schedule(ScheduleArgs),
    /// Tabulate several partition functions on a shared scale grid
    ComparePartitions(CompareArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("generator").required(true).args(["cantor", "uniform", "point", "random"])))]
pub struct GenArgs {
    /// Cantor measure, e.g. depth=10,ratio=0.3333,p=0.5
    #[arg(long, value_name = "PARAMS", num_args = 0..=1, default_missing_value = "")]
    pub cantor: Option<String>,
    /// Uniform grid, e.g. dim=2,n=64
    #[arg(long, value_name = "PARAMS", num_args = 0..=1, default_missing_value = "")]
    pub uniform: Option<String>,
    /// Unit point mass, e.g. dim=1
    #[arg(long, value_name = "PARAMS", num_args = 0..=1, default_missing_value = "")]
    pub point: Option<String>,
    /// Random atoms in the unit cube, e.g. atoms=50,dim=2 (uses --seed)
    #[arg(long, value_name = "PARAMS", num_args = 0..=1, default_missing_value = "")]
    pub random: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rescale to total mass 1
    #[arg(long)]
    pub normalize: bool,
    /// Output file (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Measure JSON or PGM file, or a generator: point, cantor:depth=10, uniform:dim=1,n=256, random:atoms=20,dim=2
    #[arg(long)]
    pub measure: String,
    /// Rescale to total mass 1
    #[arg(long)]
    pub normalize: bool,
    /// Seed for random generators
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    /// Quadrature points per kernel scale
    #[arg(long, default_value_t = 8)]
    pub quad_points: usize,
    /// Relative kernel size at which integration stops
    #[arg(long, default_value_t = 1e-12)]
    pub quad_tol: f64,
}

impl QuadArgs {
    fn spec(&self) -> Result<QuadratureSpec> {
        QuadratureSpec::new(self.quad_points, self.quad_tol)
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    /// gaussian or bump:INNER,OUTER
    #[arg(long, default_value = "gaussian")]
    pub kernel: String,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// BASE^A..BASE^B (inclusive) or a decreasing comma list
    #[arg(long)]
    pub scales: String,
    /// Partition kind (repeatable): raw|box|ball-corr|ball-leb|kernel-sum|kernel-corr|kernel-leb
    #[arg(long = "kind", default_value = "box")]
    pub kinds: Vec<String>,
    /// Output prefix: writes PREFIX.KIND.csv and PREFIX.json
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct DerivativeArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value = "gaussian")]
    pub kernel: String,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long, default_value = "2^2..2^-6")]
    pub scales: String,
    /// Output CSV (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct ScheduleArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value = "gaussian")]
    pub kernel: String,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// pow:t=T,n=N0..N1 or geo:n=N0..N1
    #[arg(long)]
    pub schedule: String,
    /// Lower Renyi dimension for the critical exponent (estimated from box sums if omitted)
    #[arg(long)]
    pub dimension: Option<f64>,
    /// Output prefix: writes PREFIX.csv and PREFIX.json
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub measure: MeasureArgs,
    #[arg(long, default_value = "gaussian")]
    pub kernel: String,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    #[arg(long)]
    pub scales: String,
    /// Partition kinds (repeatable); all seven if omitted
    #[arg(long = "kind")]
    pub kinds: Vec<String>,
    /// Output CSV (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

/// Runs a parsed command, writing results to files or stdout.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a),
        Command::Estimate(a) => cmd_estimate(&a),
        Command::DerivativeCheck(a) => cmd_derivative_check(&a),
        Command::Schedule(a) => cmd_schedule(&a),
        Command::ComparePartitions(a) => cmd_compare_partitions(&a),
    }
}

/// Maps a result to the process exit code.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_numeric() => 3,
        Err(_) => 2,
    }
}

// ---- parsing helpers ----

/// `k=v,k=v` pairs; an empty string yields no pairs.
fn parse_params(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .filter(|f| !f.trim().is_empty())
        .map(|f| {
            f.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::invalid(format!("expected key=value, got '{f}'")))
        })
        .collect()
}

struct Params(Vec<(String, String)>);

impl Params {
    fn parse(s: &str, allowed: &[&str]) -> Result<Self> {
        let pairs = parse_params(s)?;
        if let Some((k, _)) = pairs.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(Error::invalid(format!("unknown parameter '{k}' (allowed: {})", allowed.join(", "))));
        }
        Ok(Self(pairs))
    }

    fn get<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.0.iter().rev().find(|(k, _)| k == key) {
            None => Ok(default),
            Some((_, v)) => v.parse().map_err(|_| Error::invalid(format!("bad value '{v}' for {key}"))),
        }
    }

    /// Accepts decimals and simple fractions such as `1/3`.
    fn get_ratio(&self, key: &str, default: f64) -> Result<f64> {
        match self.0.iter().rev().find(|(k, _)| k == key) {
            None => Ok(default),
            Some((_, v)) => parse_number(v),
        }
    }
}

fn parse_number(v: &str) -> Result<f64> {
    let bad = || Error::invalid(format!("bad number '{v}'"));
    match v.split_once('/') {
        Some((a, b)) => {
            let (a, b): (f64, f64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            Ok(a / b)
        }
        None => v.trim().parse().map_err(|_| bad()),
    }
}

fn generate(name: &str, params: &str, seed: u64) -> Result<DiscreteMeasure> {
    match name {
        "point" => {
            let p = Params::parse(params, &["dim"])?;
            DiscreteMeasure::unit_point(p.get("dim", 1)?)
        }
        "cantor" => {
            let p = Params::parse(params, &["depth", "ratio", "p"])?;
            DiscreteMeasure::cantor(p.get("depth", 10)?, p.get_ratio("ratio", 1.0 / 3.0)?, p.get_ratio("p", 0.5)?)
        }
        "uniform" => {
            let p = Params::parse(params, &["dim", "n"])?;
            DiscreteMeasure::uniform_grid(p.get("dim", 1)?, p.get("n", 256)?)
        }
        "random" => {
            let p = Params::parse(params, &["atoms", "dim"])?;
            DiscreteMeasure::random(p.get("atoms", 20)?, p.get("dim", 1)?, seed)
        }
        other => Err(Error::invalid(format!(
            "unknown measure generator '{other}' (expected point, cantor, uniform or random)"
        ))),
    }
}

/// Loads or generates the measure named by `--measure`.
pub fn load_measure(args: &MeasureArgs) -> Result<DiscreteMeasure> {
    let spec = args.measure.as_str();
    let lower = spec.to_ascii_lowercase();
    let mu = if lower.ends_with(".json") {
        DiscreteMeasure::load_json(spec)?
    } else if lower.ends_with(".pgm") {
        DiscreteMeasure::from_pgm(spec)?
    } else if Path::new(spec).is_file() {
        return Err(Error::invalid(format!("cannot tell the format of '{spec}' (use .json or .pgm)")));
    } else {
        let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
        generate(name, params, args.seed)?
    };
    Ok(if args.normalize { mu.normalized() } else { mu })
}

/// Expands `BASE^A..BASE^B` (integer exponents, inclusive, coarse to fine)
/// or a comma list, which must be strictly decreasing.
pub fn parse_scales(s: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| Error::invalid(format!("bad scale spec '{s}': {why}"));
    if let Some((a, b)) = s.split_once("..") {
        let side = |t: &str| -> Result<(f64, i32)> {
            let (base, exp) = t.trim().split_once('^').ok_or_else(|| bad("expected BASE^EXP"))?;
            let base: f64 = base.parse().map_err(|_| bad("base is not a number"))?;
            let exp: i32 = exp.parse().map_err(|_| bad("exponent is not an integer"))?;
            Ok((base, exp))
        };
        let (b1, e1) = side(a)?;
        let (b2, e2) = side(b)?;
        if b1 != b2 {
            return Err(bad("both ends need the same base"));
        }
        if !(b1 > 1.0 && b1.is_finite()) {
            return Err(bad("base must exceed 1"));
        }
        if e1 == e2 {
            return Err(bad("range holds a single scale"));
        }
        let (hi, lo) = (e1.max(e2), e1.min(e2));
        return Ok((lo..=hi).rev().map(|k| b1.powi(k)).collect());
    }
    let eps: Vec<f64> = s.split(',').map(parse_number).collect::<Result<_>>()?;
    if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(bad("scales must be positive"));
    }
    if eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(bad("scales must be strictly decreasing"));
    }
    Ok(eps)
}

fn parse_kinds(names: &[String], kernel: &RadialKernel) -> Result<Vec<PartitionKind>> {
    let names: Vec<&str> =
        if names.is_empty() { KIND_NAMES.to_vec() } else { names.iter().map(String::as_str).collect() };
    names.iter().map(|n| PartitionKind::parse(n, kernel)).collect()
}

fn warn_if_below_spacing(mu: &DiscreteMeasure, eps_min: f64) {
    if let Some(s) = mu.min_spacing() {
        if eps_min < 2.0 * s {
            eprintln!("warning: smallest scale {eps_min:e} is below twice the atom spacing {s:e}; the atomic approximant is not faithful there");
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| Error::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn json_text(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// JSON has no infinities; unbounded values are written as the string "inf".
fn json_number(x: f64) -> Value {
    if x == f64::INFINITY {
        json!("inf")
    } else if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

// ---- commands ----

pub fn cmd_gen(a: &GenArgs) -> Result<()> {
    let (name, params) = [("cantor", &a.cantor), ("uniform", &a.uniform), ("point", &a.point), ("random", &a.random)]
        .into_iter()
        .find_map(|(n, p)| p.as_ref().map(|p| (n, p.as_str())))
        .ok_or_else(|| Error::invalid("no generator given"))?;
    let mu = generate(name, params, a.seed)?;
    let mu = if a.normalize { mu.normalized() } else { mu };
    write_out(a.out.as_deref(), &(mu.to_json()? + "\n"))
}

pub fn cmd_estimate(a: &EstimateArgs) -> Result<()> {
    let mu = load_measure(&a.measure)?;
    let kernel: RadialKernel = a.kernel.parse()?;
    let quad = a.quad.spec()?;
    let eps = parse_scales(&a.scales)?;
    let kinds = parse_kinds(&a.kinds, &kernel)?;
    warn_if_below_spacing(&mu, *eps.last().unwrap());

    let mut summaries = Vec::new();
    for kind in &kinds {
        let series = sample_series(kind, &mu, a.q, &eps, Some(&quad))?;
        let est = estimate_orders(&series)?;
        if let Some(prefix) = &a.out {
            let mut csv = String::from("eps,lambda,lnP,ratio\n");
            for ((e, l), (v, r)) in eps.iter().zip(series.lambda()).zip(series.values().iter().zip(series.ratios())) {
                writeln!(csv, "{e},{l},{v},{r}").unwrap();
            }
            write_out(Some(&with_suffix(prefix, &format!(".{}.csv", kind.name()))), &csv)?;
        }
        summaries.push(json!({
            "kind": kind.name(),
            "q": a.q,
            "slope": est.slope,
            "upper": est.upper,
            "lower": est.lower,
            "window": [est.window.0, est.window.1],
            "residual": est.residual,
            "low_confidence": est.low_confidence,
            "excluded": est.excluded,
        }));
    }
    let text = json_text(&Value::Array(summaries))?;
    if let Some(prefix) = &a.out {
        write_out(Some(&with_suffix(prefix, ".json")), &text)?;
    }
    print!("{text}");
    Ok(())
}

/// Step in `lambda = ln eps` for the central-difference check.
const FD_STEP: f64 = 1e-4;

pub fn cmd_derivative_check(a: &DerivativeArgs) -> Result<()> {
    let mu = load_measure(&a.measure)?;
    let kernel: RadialKernel = a.kernel.parse()?;
    let quad = a.quad.spec()?;
    let eps = parse_scales(&a.scales)?;

    let mut csv = String::from("eps,lambda,norm,slope,lower,upper,fd_slope,fd_residual,bounds_ok\n");
    let mut failures = 0;
    for &e in &eps {
        let r = norm_derivative(&mu, &kernel, e, a.q, &quad)?;
        let lam = e.ln();
        let up = lq_norm(&mu, &kernel, (lam + FD_STEP).exp(), a.q, &quad)?.ln();
        let down = lq_norm(&mu, &kernel, (lam - FD_STEP).exp(), a.q, &quad)?.ln();
        let fd = (up - down) / (2.0 * FD_STEP);
        let ok = check_slope_bounds(&r, &kernel).passed;
        failures += usize::from(!ok);
        writeln!(
            csv,
            "{e},{lam},{},{},{},{},{fd},{},{ok}",
            r.norm,
            r.loglog_slope,
            r.lower_bound,
            r.upper_bound,
            (fd - r.loglog_slope).abs()
        )
        .unwrap();
    }
    write_out(a.out.as_deref(), &csv)?;
    if failures > 0 {
        return Err(Error::Degenerate(format!("{failures} scale(s) violate the slope bounds")));
    }
    Ok(())
}

pub fn cmd_schedule(a: &ScheduleArgs) -> Result<()> {
    let mu = load_measure(&a.measure)?;
    let kernel: RadialKernel = a.kernel.parse()?;
    let quad = a.quad.spec()?;
    let schedule: ScaleSchedule = a.schedule.parse()?;
    let scales = schedule.scales();
    warn_if_below_spacing(&mu, *scales.last().unwrap());

    let dimension = match a.dimension {
        Some(d) => d,
        None => {
            let series = sample_series(&PartitionKind::BoxSum, &mu, a.q, &scales, None)?;
            estimate_orders(&series)?.slope.clamp(0.0, mu.dim() as f64)
        }
    };
    let report = run_schedule(&mu, &kernel, &schedule, a.q, &quad)?;
    let report = report.with_critical_exponent(dimension)?;

    let mut csv = String::from("n,eps,norm,diff,ln_diff,ratio\n");
    let (ln_diffs, ratios) = (report.ln_diffs(), report.ratios());
    for i in 0..report.n.len() {
        write!(csv, "{},{},{}", report.n[i], report.eps[i], report.norms[i]).unwrap();
        if i == 0 {
            csv.push_str(",,,\n");
        } else {
            writeln!(csv, ",{},{},{}", report.diffs[i - 1], ln_diffs[i - 1], ratios[i - 1]).unwrap();
        }
    }
    let (kind, t) = match schedule.kind {
        ScheduleKind::Power { t } => ("pow", json!(t)),
        ScheduleKind::Geometric => ("geo", Value::Null),
    };
    let summary = json!({
        "kind": kind,
        "t": t,
        "q": a.q,
        "n0": schedule.n0,
        "n1": schedule.n1,
        "m_hat": json_number(report.m_hat),
        "m_ratio": json_number(report.m_ratio),
        "dimension": dimension,
        "critical_t": json_number(report.critical_t),
        "in_I_q": report.in_i_q,
    });
    let text = json_text(&summary)?;
    if let Some(prefix) = &a.out {
        write_out(Some(&with_suffix(prefix, ".csv")), &csv)?;
        write_out(Some(&with_suffix(prefix, ".json")), &text)?;
    }
    print!("{text}");
    Ok(())
}

pub fn cmd_compare_partitions(a: &CompareArgs) -> Result<()> {
    let mu = load_measure(&a.measure)?;
    let kernel: RadialKernel = a.kernel.parse()?;
    let quad = a.quad.spec()?;
    let eps = parse_scales(&a.scales)?;
    let kinds = parse_kinds(&a.kinds, &kernel)?;

    let columns: Vec<Vec<f64>> = kinds
        .iter()
        .map(|k| eps.iter().map(|&e| evaluate_ln(k, &mu, e, a.q, Some(&quad)).map(f64::exp)).collect())
        .collect::<Result<_>>()?;
    let mut csv = String::from("eps");
    for k in &kinds {
        write!(csv, ",{}", k.name()).unwrap();
    }
    csv.push('\n');
    for (i, e) in eps.iter().enumerate() {
        write!(csv, "{e}").unwrap();
        for col in &columns {
            write!(csv, ",{}", col[i]).unwrap();
        }
        csv.push('\n');
    }
    write_out(a.out.as_deref(), &csv)
}
