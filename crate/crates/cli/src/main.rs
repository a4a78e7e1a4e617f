//! `well-entropy`: entropies and uncertainty relations of the infinite
//! square well from the command line.

mod grid;
mod record;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use well_entropy::entropy::{self, Space};
use well_entropy::error::Error;
use well_entropy::quadrature::QuadratureConfig;
use well_entropy::verify::{self, VerifySettings, CRITERION_COUNT};
use well_entropy::well::{BoundaryKind, Orbital, WellSpec};

use grid::GridArgs;
use record::{write_rows, Format, Record, UncertaintyRecord};

const MAX_PERIODS_ENV: &str = "WELL_ENTROPY_MAX_PERIODS";

mod exit {
    pub const OK: u8 = 0;
    pub const VERIFY_FAILED: u8 = 1;
    pub const DOMAIN: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const IO: u8 = 74;
}

#[derive(Debug, Parser)]
#[command(name = "well-entropy", version, about = "Renyi, Shannon and Tsallis entropies of the infinite square well")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate entropies at single orders
    Entropy(EntropyArgs),
    /// Sweep the order over a grid and write CSV
    Sweep(SweepArgs),
    /// Report both sides of an uncertainty relation
    Uncertainty(UncertaintyArgs),
    /// Run the acceptance table
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Dirichlet,
    Neumann,
}

impl From<KindArg> for BoundaryKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Dirichlet => BoundaryKind::Dirichlet,
            KindArg::Neumann => BoundaryKind::Neumann,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpaceArg {
    Position,
    Momentum,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Position => Space::Position,
            SpaceArg::Momentum => Space::Momentum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    Renyi,
    Shannon,
    Tsallis,
    Onicescu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Relation {
    Renyi,
    Sobolev,
}

#[derive(Debug, Args)]
struct WellArgs {
    #[arg(long, value_enum)]
    kind: KindArg,

    /// Quantum numbers, comma separated
    #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u32).range(1..))]
    n: Vec<u32>,

    /// Well width
    #[arg(long, default_value_t = 1.0)]
    width: f64,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    #[command(flatten)]
    well: WellArgs,

    #[arg(long, value_enum)]
    space: SpaceArg,

    #[arg(long, value_enum, default_value = "renyi")]
    measure: Measure,

    #[command(flatten)]
    grid: GridArgs,

    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("selector").required(true).args(["space", "relation"])))]
struct SweepArgs {
    #[command(flatten)]
    well: WellArgs,

    #[arg(long, value_enum)]
    space: Option<SpaceArg>,

    /// Sweep an uncertainty relation instead: the Renyi sum, or the momentum
    /// side of the Sobolev relation
    #[arg(long, value_enum)]
    relation: Option<Relation>,

    #[command(flatten)]
    grid: GridArgs,

    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct UncertaintyArgs {
    #[command(flatten)]
    well: WellArgs,

    #[arg(long, value_enum)]
    relation: Relation,

    #[command(flatten)]
    grid: GridArgs,

    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Multiply every tolerance in the table by this factor
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,

    /// Run only these criteria (1-based, comma separated)
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=CRITERION_COUNT as i64))]
    criterion: Vec<u8>,

    /// Also list passing checks
    #[arg(long, short)]
    verbose: bool,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: error_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: exit::IO,
            message: format!("I/O error: {e}"),
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::BelowThreshold { .. } => exit::DOMAIN,
        Error::BudgetExceeded { .. } | Error::ToleranceNotMet { .. } => exit::BUDGET,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let outcome = quadrature_config().and_then(|cfg| match cli.command {
        Command::Entropy(args) => cmd_entropy(&args, &cfg),
        Command::Sweep(args) => cmd_sweep(&args, &cfg),
        Command::Uncertainty(args) => cmd_uncertainty(&args, &cfg),
        Command::Verify(args) => cmd_verify(&args, &cfg),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("well-entropy: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn quadrature_config() -> Result<QuadratureConfig<f64>, Failure> {
    let cfg = QuadratureConfig::default();
    match std::env::var(MAX_PERIODS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(p) if p > 0 => Ok(cfg.with_max_periods(p)),
            _ => Err(Failure::usage(format!("{MAX_PERIODS_ENV} must be a positive integer, got `{raw}`"))),
        },
        Err(_) => Ok(cfg),
    }
}

fn well(args: &WellArgs) -> Result<WellSpec<f64>, Failure> {
    Ok(WellSpec::new(args.kind.into(), args.width)?)
}

fn orbital(n: u32) -> Orbital {
    Orbital::new(n).expect("clap enforces n >= 1")
}

/// Every (n, α) pair in n-major order.
fn queries(ns: &[u32], alphas: &[f64]) -> Vec<(u32, f64)> {
    ns.iter().flat_map(|&n| alphas.iter().map(move |&a| (n, a))).collect()
}

struct Point {
    beta: Option<f64>,
    value: f64,
    err: f64,
    route: &'static str,
}

fn finite(p: Point) -> Result<Point, Error> {
    if p.value.is_finite() && p.err.is_finite() {
        Ok(p)
    } else {
        Err(Error::Domain(format!("no finite value (got {})", p.value)))
    }
}

fn eval_measure(
    spec: &WellSpec<f64>,
    n: u32,
    space: Space,
    measure: Measure,
    alpha: f64,
    cfg: &QuadratureConfig<f64>,
) -> Result<Point, Error> {
    let orb = orbital(n);
    let p = match measure {
        Measure::Renyi => {
            let r = entropy::renyi(spec, orb, space, alpha, cfg)?;
            Point {
                beta: None,
                value: r.value,
                err: r.error_estimate,
                route: r.route.name(),
            }
        }
        Measure::Shannon => {
            let r = entropy::shannon(spec, orb, space, cfg)?;
            Point {
                beta: None,
                value: r.value,
                err: r.error_estimate,
                route: r.route.name(),
            }
        }
        Measure::Tsallis => {
            let r = entropy::renyi(spec, orb, space, alpha, cfg)?;
            let t = entropy::tsallis_from_renyi(r.value, alpha);
            // dT/dR = e^{(1−α)R}, and 1 inside the Shannon window
            let slope = if t == r.value { 1.0 } else { ((1.0 - alpha) * r.value).exp() };
            Point {
                beta: None,
                value: t,
                err: slope * r.error_estimate,
                route: r.route.name(),
            }
        }
        Measure::Onicescu => {
            let r = entropy::renyi(spec, orb, space, 2.0, cfg)?;
            let e = (-r.value).exp();
            Point {
                beta: None,
                value: e,
                err: e * r.error_estimate,
                route: r.route.name(),
            }
        }
    };
    finite(p)
}

/// The order the row is reported at: fixed for Shannon and Onicescu.
fn reported_order(measure: Measure, alpha: f64) -> f64 {
    match measure {
        Measure::Shannon => 1.0,
        Measure::Onicescu => 2.0,
        Measure::Renyi | Measure::Tsallis => alpha,
    }
}

fn cmd_entropy(args: &EntropyArgs, cfg: &QuadratureConfig<f64>) -> Result<u8, Failure> {
    let spec = well(&args.well)?;
    let alphas = match args.measure {
        Measure::Shannon | Measure::Onicescu if args.grid.alpha.is_empty() && args.grid.start.is_none() => vec![f64::NAN],
        _ => args.grid.points().map_err(Failure::usage)?,
    };
    let space: Space = args.space.into();
    let kind = spec.kind().name();
    let results: Vec<_> = queries(&args.well.n, &alphas)
        .into_par_iter()
        .map(|(n, alpha)| {
            let alpha = reported_order(args.measure, alpha);
            eval_measure(&spec, n, space, args.measure, alpha, cfg).map(|p| Record {
                kind,
                n,
                alpha,
                beta: p.beta,
                value: Some(p.value),
                err: Some(p.err),
                route: p.route.to_string(),
            })
        })
        .collect();
    emit_until_error(results, args.format)
}

/// Writes the rows before the first failure, then reports that failure.
fn emit_until_error<R: record::Row>(results: Vec<Result<R, Error>>, format: Format) -> Result<u8, Failure> {
    let mut rows = Vec::with_capacity(results.len());
    let mut failure = None;
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    write_rows(&mut out, &rows, format, true)?;
    match failure {
        Some(e) => Err(e.into()),
        None => Ok(exit::OK),
    }
}

fn eval_relation(
    spec: &WellSpec<f64>,
    n: u32,
    relation: Relation,
    alpha: f64,
    cfg: &QuadratureConfig<f64>,
) -> Result<Point, Error> {
    let orb = orbital(n);
    let beta = entropy::conjugate(alpha);
    match relation {
        Relation::Renyi => {
            if alpha.is_nan() || alpha < 0.5 {
                return Err(Error::Domain(format!("the Renyi relation needs alpha >= 1/2, got {alpha}")));
            }
            let pos = entropy::renyi_position(spec, orb, alpha)?;
            let mom = entropy::renyi_momentum(spec, orb, beta, cfg)?;
            finite(Point {
                beta: Some(beta),
                value: pos.value + mom.value,
                err: pos.error_estimate + mom.error_estimate,
                route: mom.route.name(),
            })
        }
        Relation::Sobolev => {
            let sides = entropy::sobolev_sides(spec, orb, alpha, cfg)?;
            let mom = entropy::renyi_momentum(spec, orb, beta, cfg)?;
            // right = exp(ln(β/π)/4β + (1−β) R_γ(β) / 2β)
            let err = if beta.is_infinite() {
                sides.right * mom.error_estimate / 2.0
            } else {
                sides.right * (1.0 - beta).abs() * mom.error_estimate / (2.0 * beta)
            };
            finite(Point {
                beta: Some(beta),
                value: sides.right,
                err,
                route: mom.route.name(),
            })
        }
    }
}

fn cmd_sweep(args: &SweepArgs, cfg: &QuadratureConfig<f64>) -> Result<u8, Failure> {
    let spec = well(&args.well)?;
    let alphas = args.grid.points().map_err(Failure::usage)?;
    let kind = spec.kind().name();
    let results: Vec<(Record, bool)> = queries(&args.well.n, &alphas)
        .into_par_iter()
        .map(|(n, alpha)| {
            let point = match (args.space, args.relation) {
                (Some(space), _) => eval_measure(&spec, n, space.into(), Measure::Renyi, alpha, cfg),
                (None, Some(relation)) => eval_relation(&spec, n, relation, alpha, cfg),
                (None, None) => unreachable!("clap requires a selector"),
            };
            match point {
                Ok(p) => (
                    Record {
                        kind,
                        n,
                        alpha,
                        beta: p.beta,
                        value: Some(p.value),
                        err: Some(p.err),
                        route: p.route.to_string(),
                    },
                    false,
                ),
                Err(e) => {
                    let budget = error_code(&e) == exit::BUDGET;
                    let beta = args.relation.map(|_| entropy::conjugate(alpha)).filter(|b| alpha >= 0.5 && b.is_finite());
                    (
                        Record {
                            kind,
                            n,
                            alpha,
                            beta,
                            value: None,
                            err: None,
                            route: skip_reason(&e),
                        },
                        budget,
                    )
                }
            }
        })
        .collect();
    let budget_failures = results.iter().filter(|(_, b)| *b).count();
    let rows: Vec<Record> = results.into_iter().map(|(r, _)| r).collect();
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure {
                code: exit::IO,
                message: format!("cannot create {}: {e}", path.display()),
            })?;
            write_rows(&mut BufWriter::new(file), &rows, Format::Csv, true)?;
        }
        None => write_rows(&mut io::stdout().lock(), &rows, Format::Csv, true)?,
    }
    if budget_failures > 0 {
        return Err(Failure {
            code: exit::BUDGET,
            message: format!("{budget_failures} grid point(s) exhausted the period budget"),
        });
    }
    Ok(exit::OK)
}

/// Single-line, comma-free reason for a skipped row.
fn skip_reason(e: &Error) -> String {
    let reason = match e {
        Error::BelowThreshold { threshold, .. } => format!("below threshold alpha_TH = {threshold}"),
        Error::Domain(msg) => format!("domain: {msg}"),
        Error::BudgetExceeded { periods, .. } => format!("budget exceeded after {periods} periods"),
        Error::ToleranceNotMet { .. } => "tolerance not met".to_string(),
    };
    format!("skipped: {}", reason.replace([',', '\n'], ";"))
}

fn cmd_uncertainty(args: &UncertaintyArgs, cfg: &QuadratureConfig<f64>) -> Result<u8, Failure> {
    let spec = well(&args.well)?;
    let alphas = args.grid.points().map_err(Failure::usage)?;
    let kind = spec.kind().name();
    let results: Vec<_> = queries(&args.well.n, &alphas)
        .into_par_iter()
        .map(|(n, alpha)| {
            let orb = orbital(n);
            let report = match args.relation {
                Relation::Renyi => entropy::renyi_sum(&spec, orb, alpha, cfg),
                Relation::Sobolev => entropy::sobolev_sides(&spec, orb, alpha, cfg),
            }?;
            Ok(UncertaintyRecord {
                kind,
                n,
                alpha: report.alpha,
                beta: Some(report.beta),
                left: Some(report.left),
                right: Some(report.right),
                slack: Some(report.slack),
                saturated: Some(report.saturated),
                skipped: None,
            })
        })
        .collect();
    emit_until_error(results, args.format)
}

fn cmd_verify(args: &VerifyArgs, cfg: &QuadratureConfig<f64>) -> Result<u8, Failure> {
    if !(args.tolerance_scale.is_finite() && args.tolerance_scale > 0.0) {
        return Err(Failure::usage(format!(
            "--tolerance-scale must be positive, got {}",
            args.tolerance_scale
        )));
    }
    let settings = VerifySettings {
        tolerance_scale: args.tolerance_scale,
        quadrature: *cfg,
    };
    let ids: Vec<u8> = if args.criterion.is_empty() {
        (1..=CRITERION_COUNT).collect()
    } else {
        args.criterion.clone()
    };
    let started = Instant::now();
    let reports: Vec<_> = ids.par_iter().map(|&id| verify::run_criterion(id, &settings)).collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut failed = 0;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "criterion {:02} {status} {}", r.id, r.title)?;
        if let Some(e) = &r.error {
            writeln!(out, "    error: {e}")?;
        }
        for c in &r.checks {
            if c.passed && !args.verbose {
                continue;
            }
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(out, "    {mark} {}: measured {:.12e}, expected {}", c.label, c.measured, c.expected)?;
            if let Some(note) = &c.note {
                writeln!(out, "         note: {note}")?;
            }
        }
        if !r.passed() {
            failed += 1;
        }
    }
    writeln!(
        out,
        "{} of {} criteria passed ({:.1} s)",
        reports.len() - failed,
        reports.len(),
        started.elapsed().as_secs_f64()
    )?;
    out.flush()?;
    Ok(if failed == 0 { exit::OK } else { exit::VERIFY_FAILED })
}
