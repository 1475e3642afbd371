//! `majorize` command-line front end.
//!
//! Exit codes: 0 when the checked relation holds (or the command succeeded),
//! 1 when it does not hold or a precondition of the requested mode fails,
//! 2 on malformed input.

pub mod table;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use majorize::num::format_scalar;
use majorize::{
    classical_majorizes, decompose_decreasing, decompose_general, decompose_transfers,
    generalized_compare, gini, lorenz_points, random_dominated_pair, verify_certificate, Array,
    Certificate, DominanceOutcome, Tolerance,
};
use serde_json::json;
use thiserror::Error;

use crate::table::TimelineTable;

pub const EPS_ENV: &str = "MAJORIZE_EPS";

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input; exit code 2.
    #[error("{0}")]
    Input(String),
    /// A relation or precondition does not hold; exit code 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn input(msg: impl std::fmt::Display) -> CliError {
    CliError::Input(msg.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "majorize",
    version,
    about = "Generalized Lorenz dominance checks and certificates of elementary impact increases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two arrays; exit 0 when LEFT ≺ RIGHT (or equal), 1 otherwise.
    Check(CheckArgs),
    /// Build a certificate of elementary impact increases from SOURCE to TARGET.
    Decompose(DecomposeArgs),
    /// Replay and check a certificate file.
    Verify(VerifyArgs),
    /// Lorenz curve points and Gini index of an array.
    Lorenz(LorenzArgs),
    /// Pairwise dominance matrix over the rows of a timeline CSV.
    Batch(BatchArgs),
    /// Emit random dominated pairs, one `X Y` pair per line.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckMode {
    General,
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeMode {
    General,
    Decreasing,
    Transfers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveFormat {
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct EpsArg {
    /// Absolute comparison tolerance [default: $MAJORIZE_EPS or 1e-9]
    #[arg(long, global = true)]
    pub eps: Option<f64>,
}

#[derive(Debug, clap::Args)]
pub struct CheckArgs {
    /// Comma-separated values, or @ID to pick a row from --table
    pub left: String,
    /// Comma-separated values, or @ID to pick a row from --table
    pub right: String,
    #[arg(long, value_enum, default_value_t = CheckMode::General)]
    pub mode: CheckMode,
    /// Timeline CSV used to resolve @ID operands
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Print the verdict as JSON
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub eps: EpsArg,
}

#[derive(Debug, clap::Args)]
pub struct DecomposeArgs {
    pub source: String,
    pub target: String,
    #[arg(long, value_enum, default_value_t = DecomposeMode::General)]
    pub mode: DecomposeMode,
    /// Write the certificate JSON here
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub eps: EpsArg,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub cert: PathBuf,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub eps: EpsArg,
}

#[derive(Debug, clap::Args)]
pub struct LorenzArgs {
    pub values: String,
    /// Write the curve here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = CurveFormat::Csv)]
    pub format: CurveFormat,
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct BatchArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = CheckMode::General)]
    pub mode: CheckMode,
    /// Write a JSON report here
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub eps: EpsArg,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub n: usize,
    /// Number of inverse moves applied to each target
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Real-valued entries instead of integers
    #[arg(long)]
    pub float: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs a parsed command, writing normal output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Check(args) => cmd_check(&args, out),
        Command::Decompose(args) => cmd_decompose(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Lorenz(args) => cmd_lorenz(&args, out),
        Command::Batch(args) => cmd_batch(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
    }
}

/// `--eps`, else `$MAJORIZE_EPS`, else the library default.
pub fn resolve_tolerance(flag: Option<f64>) -> CliResult<Tolerance> {
    let eps = match flag {
        Some(eps) => eps,
        None => match std::env::var(EPS_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| input(format!("{EPS_ENV}={text:?} is not a number")))?,
            Err(_) => Tolerance::DEFAULT_EPS,
        },
    };
    Tolerance::new(eps).map_err(input)
}

/// Parses `"4,4,4,4"`.
pub fn parse_array(text: &str) -> CliResult<Array> {
    let values = text
        .split(',')
        .enumerate()
        .map(|(idx, cell)| {
            let cell = cell.trim();
            cell.parse::<f64>()
                .map_err(|_| input(format!("value {}: {cell:?} is not a number", idx + 1)))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    Array::new(values).map_err(|e| input(format!("{text:?}: {e}")))
}

fn load_table(path: &Path) -> CliResult<TimelineTable> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("{}: {e}", path.display())))?;
    TimelineTable::parse(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// An inline array, or `@id` looked up in the table.
fn resolve_operand(text: &str, table: Option<&TimelineTable>) -> CliResult<Array> {
    match text.strip_prefix('@') {
        Some(id) => {
            let table = table.ok_or_else(|| input(format!("{text}: @ID operands need --table")))?;
            table
                .get(id)
                .map(|e| e.values.clone())
                .ok_or_else(|| input(format!("no row with id {id:?}")))
        }
        None => parse_array(text),
    }
}

fn load_operands(
    left: &str,
    right: &str,
    table: Option<&Path>,
) -> CliResult<(Array, Array)> {
    let table = table.map(load_table).transpose()?;
    let left = resolve_operand(left, table.as_ref())?;
    let right = resolve_operand(right, table.as_ref())?;
    if left.len() != right.len() {
        return Err(input(format!(
            "length mismatch: left has {} values, right has {}",
            left.len(),
            right.len()
        )));
    }
    Ok((left, right))
}

fn write_out(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Failed(format!("write failed: {e}")))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn scalars(a: &Array) -> serde_json::Value {
    serde_json::to_value(a).expect("arrays serialize")
}

pub fn cmd_check(args: &CheckArgs, out: &mut dyn Write) -> CliResult<()> {
    let tol = resolve_tolerance(args.eps.eps)?;
    let (left, right) = load_operands(&args.left, &args.right, args.table.as_deref())?;
    let (verdict, holds) = match args.mode {
        CheckMode::General => {
            let outcome = generalized_compare(&left, &right, tol).map_err(input)?;
            (outcome.name().to_string(), outcome.left_below_or_equal())
        }
        CheckMode::Classical => {
            let holds = classical_majorizes(&left, &right, tol).map_err(input)?;
            (holds.to_string(), holds)
        }
    };
    let text = if args.json {
        let mode = match args.mode {
            CheckMode::General => "general",
            CheckMode::Classical => "classical",
        };
        let value = json!({
            "mode": mode,
            "verdict": verdict,
            "holds": holds,
            "left": scalars(&left),
            "right": scalars(&right),
        });
        format!("{value}\n")
    } else {
        format!("{verdict}\n")
    };
    write_out(out, &text)?;
    if holds {
        Ok(())
    } else {
        Err(CliError::Failed(String::new()))
    }
}

pub fn cmd_decompose(args: &DecomposeArgs, out: &mut dyn Write) -> CliResult<()> {
    let tol = resolve_tolerance(args.eps.eps)?;
    let (source, target) = load_operands(&args.source, &args.target, args.table.as_deref())?;
    let result = match args.mode {
        DecomposeMode::General => decompose_general(&source, &target, tol),
        DecomposeMode::Decreasing => decompose_decreasing(&source, &target, tol),
        DecomposeMode::Transfers => decompose_transfers(&source, &target, tol),
    };
    let cert = result.map_err(|e| CliError::Failed(e.to_string()))?;

    let mut text = String::new();
    if cert.is_empty() {
        text.push_str("already equal\n");
    } else {
        let eiis = cert.eii_count();
        let sorts = cert.steps.len() - eiis;
        let _ = writeln!(text, "{}", cert.chain_notation());
        let _ = writeln!(text, "{eiis} elementary impact increases, {sorts} re-sorts");
    }
    write_out(out, &text)?;
    if let Some(path) = &args.out {
        write_file(path, &(cert.to_json() + "\n"))?;
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let tol = resolve_tolerance(args.eps.eps)?;
    let text = std::fs::read_to_string(&args.cert)
        .map_err(|e| input(format!("{}: {e}", args.cert.display())))?;
    let cert = Certificate::from_json(&text)
        .map_err(|e| input(format!("{}: malformed certificate: {e}", args.cert.display())))?;
    let report = verify_certificate(&cert, tol);

    let text = if args.json {
        serde_json::to_string(&report).expect("report serializes") + "\n"
    } else {
        match report.failure {
            None => format!("ok: {} steps verified ({})\n", report.checked_steps, cert.mode),
            Some(failure) if failure.step == 0 => {
                format!("failed: certificate: {:?}\n", failure.reason)
            }
            Some(failure) => format!("failed: step {}: {:?}\n", failure.step, failure.reason),
        }
    };
    write_out(out, &text)?;
    if report.ok {
        Ok(())
    } else {
        Err(CliError::Failed(String::new()))
    }
}

pub fn cmd_lorenz(args: &LorenzArgs, out: &mut dyn Write) -> CliResult<()> {
    let table = args.table.as_deref().map(load_table).transpose()?;
    let values = resolve_operand(&args.values, table.as_ref())?;
    let curve = lorenz_points(&values).map_err(|e| CliError::Failed(e.to_string()))?;
    let index = gini(&values).map_err(|e| CliError::Failed(e.to_string()))?;
    let body = match args.format {
        CurveFormat::Csv => curve.to_csv(),
        CurveFormat::Json => curve.to_json() + "\n",
    };
    match &args.out {
        Some(path) => write_file(path, &body)?,
        None => write_out(out, &body)?,
    }
    write_out(out, &format!("gini {}\n", format_scalar(index)))
}

pub fn cmd_batch(args: &BatchArgs, out: &mut dyn Write) -> CliResult<()> {
    let tol = resolve_tolerance(args.eps.eps)?;
    let table = load_table(&args.input)?;
    let entities = &table.entities;

    let matrix: Vec<Vec<DominanceOutcome>> = entities
        .iter()
        .map(|row| {
            entities
                .iter()
                .map(|col| pairwise(&row.values, &col.values, args.mode, tol))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<_>>()?;

    let width = entities
        .iter()
        .map(|e| e.id.chars().count())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut text = String::new();
    let _ = write!(text, "{:width$}", "");
    for e in entities {
        let _ = write!(text, " {:>width$}", e.id);
    }
    text.push('\n');
    for (e, row) in entities.iter().zip(&matrix) {
        let _ = write!(text, "{:width$}", e.id);
        for cell in row {
            let _ = write!(text, " {:>width$}", cell.symbol());
        }
        text.push('\n');
    }
    write_out(out, &text)?;

    if let Some(path) = &args.out {
        let mode = match args.mode {
            CheckMode::General => "general",
            CheckMode::Classical => "classical",
        };
        let report = json!({
            "mode": mode,
            "eps": tol.eps(),
            "ids": entities.iter().map(|e| e.id.as_str()).collect::<Vec<_>>(),
            "period_labels": table.period_labels,
            "matrix": matrix.iter().map(|r| r.iter().map(|c| c.symbol()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "outcomes": matrix.iter().map(|r| r.iter().map(|c| c.name()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        write_file(
            path,
            &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"),
        )?;
    }
    Ok(())
}

/// Outcome of comparing `row` against `col`; classical mode maps the
/// preorder onto the same four cells.
fn pairwise(
    row: &Array,
    col: &Array,
    mode: CheckMode,
    tol: Tolerance,
) -> CliResult<DominanceOutcome> {
    match mode {
        CheckMode::General => generalized_compare(row, col, tol).map_err(input),
        CheckMode::Classical => {
            let below = classical_majorizes(row, col, tol).map_err(input)?;
            let above = classical_majorizes(col, row, tol).map_err(input)?;
            Ok(match (below, above) {
                (true, true) => DominanceOutcome::Equal,
                (true, false) => DominanceOutcome::LeftStrictlyBelow,
                (false, true) => DominanceOutcome::RightStrictlyBelow,
                (false, false) => DominanceOutcome::Incomparable,
            })
        }
    }
}

/// Inline operand syntax with shortest round-trip digits.
fn inline(a: &Array) -> String {
    a.values()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    if args.n == 0 {
        return Err(input("--n must be at least 1"));
    }
    let mut text = String::new();
    for p in 0..args.count {
        let seed = args.seed.wrapping_add(p as u64);
        let (x, y) = random_dominated_pair(seed, args.n, args.k, !args.float);
        let _ = writeln!(text, "{} {}", inline(&x), inline(&y));
    }
    match &args.out {
        Some(path) => write_file(path, &text),
        None => write_out(out, &text),
    }
}
