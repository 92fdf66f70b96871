//! `charvar`: E-polynomials and Euler characteristics of free-group character
//! varieties from the command line.

mod format;
mod parse;

use std::io::Write;
use std::process::ExitCode;

use charvar_core::acceptance::{self, CRITERIA};
use charvar_core::fforacle::{self, Verdict};
use charvar_core::partitions::enumerate_partitions;
use charvar_core::{CharVarEngine, GroupKind, Partition, StratumQuery};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use crate::format::{render, Format, Quantity, Record};
use crate::parse::{parse_partition, PartitionError};

/// Thread count for parallel work; defaults to all cores.
const THREADS_ENV: &str = "CHARVAR_THREADS";

#[derive(Parser)]
#[command(
    name = "charvar",
    version,
    about = "E-polynomials of GL/SL/PGL character varieties of free groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// E-polynomial of a character variety or one of its strata.
    Epoly(Selector),
    /// Euler characteristic of a character variety or one of its strata.
    Euler(Selector),
    /// Polynomials for a range of n and r.
    Table(TableArgs),
    /// Compare brute-force counts over finite fields with B_n^r(q).
    Verify(VerifyArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Gl,
    Sl,
    Pgl,
}

impl From<Group> for GroupKind {
    fn from(g: Group) -> Self {
        match g {
            Group::Gl => GroupKind::Gl,
            Group::Sl => GroupKind::Sl,
            Group::Pgl => GroupKind::Pgl,
        }
    }
}

#[derive(Args)]
struct Selector {
    #[arg(long, value_enum)]
    group: Group,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Polystable type in exponent notation, e.g. "1^2 2".
    #[arg(long)]
    stratum: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    group: Group,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    r_min: usize,
    #[arg(long)]
    r_max: usize,
    /// One row per stratum instead of per variety.
    #[arg(long)]
    per_stratum: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Field size; repeat for several fields.
    #[arg(long = "q", required = true)]
    qs: Vec<u32>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Run only these criteria; repeatable.
    #[arg(long = "criterion")]
    criteria: Vec<usize>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] charvar_core::Error),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{THREADS_ENV}={0:?} is not a positive integer")]
    InvalidThreads(String),
    #[error("{0}")]
    VerificationFailed(String),
    #[error("{0}")]
    SelftestFailed(String),
}

impl CliError {
    fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Partition(e) => e.name(),
            CliError::Csv(_) => "CsvError",
            CliError::Io(_) => "IoError",
            CliError::InvalidThreads(_) => "InvalidThreads",
            CliError::VerificationFailed(_) => "VerificationFailed",
            CliError::SelftestFailed(_) => "SelftestFailed",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::FAILURE
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads = value
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::InvalidThreads(value.clone()))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::InvalidThreads(format!("{value} ({e})")))
}

fn run(command: Command) -> Result<(), CliError> {
    let engine = CharVarEngine::new();
    match command {
        Command::Epoly(sel) => single(&engine, sel, Quantity::Polynomial),
        Command::Euler(sel) => single(&engine, sel, Quantity::EulerChar),
        Command::Table(args) => table(&engine, args),
        Command::Verify(args) => verify(&engine, args),
        Command::Selftest(args) => selftest(&engine, args),
    }
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn compute(
    engine: &CharVarEngine,
    group: GroupKind,
    n: usize,
    r: usize,
    stratum: Option<Partition>,
) -> Result<Record, CliError> {
    let query = StratumQuery::new(group, n, r, stratum.clone())?;
    let poly = engine.e_group(&query)?;
    Record::new(group, n, r, stratum, &poly).ok_or_else(|| {
        charvar_core::Error::NonIntegral {
            value: poly.to_string(),
        }
        .into()
    })
}

fn single(engine: &CharVarEngine, sel: Selector, quantity: Quantity) -> Result<(), CliError> {
    let stratum = sel
        .stratum
        .as_deref()
        .map(|s| parse_partition(s, sel.n))
        .transpose()?;
    let record = compute(engine, sel.group.into(), sel.n, sel.r, stratum)?;
    emit(&render(&[record], sel.format, quantity, true)?)
}

fn table(engine: &CharVarEngine, args: TableArgs) -> Result<(), CliError> {
    let group: GroupKind = args.group.into();
    let mut cells = Vec::new();
    for n in args.n_min..=args.n_max {
        for r in args.r_min..=args.r_max {
            if args.per_stratum {
                cells.extend(enumerate_partitions(n).into_iter().map(|m| (n, r, Some(m))));
            } else {
                cells.push((n, r, None));
            }
        }
    }
    // par_iter keeps input order in the collected output
    let records = cells
        .into_par_iter()
        .map(|(n, r, m)| compute(engine, group, n, r, m))
        .collect::<Result<Vec<_>, _>>()?;
    emit(&render(&records, args.format, Quantity::Polynomial, false)?)
}

fn verify(engine: &CharVarEngine, args: VerifyArgs) -> Result<(), CliError> {
    let report = fforacle::verify(args.n, args.r, &args.qs, engine)?;
    let mut text = format!(
        "{:>3} {:>3} {:>3} {:>12} {:>10} {:>12}  match\n",
        "n", "r", "q", "tuples", "classes", "B_n(q)"
    );
    for row in &report.rows {
        text += &format!(
            "{:>3} {:>3} {:>3} {:>12} {:>10} {:>12}  {}\n",
            row.n,
            row.r,
            row.q,
            row.raw,
            row.classes,
            row.symbolic.to_string(),
            if row.matches { "yes" } else { "NO" }
        );
    }
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Warning => "warning (mismatch at a single characteristic)",
        Verdict::Fail => "fail",
    };
    text += &format!("verdict: {verdict}\n");
    emit(&text)?;
    match report.verdict {
        Verdict::Fail => Err(CliError::VerificationFailed(format!(
            "counts disagree with B_{}^{} at two or more characteristics",
            args.n, args.r
        ))),
        Verdict::Warning => {
            eprintln!(
                "warning: counts disagree with B_{}^{} at one characteristic",
                args.n, args.r
            );
            Ok(())
        }
        Verdict::Pass => Ok(()),
    }
}

fn selftest(engine: &CharVarEngine, args: SelftestArgs) -> Result<(), CliError> {
    let ids = if args.criteria.is_empty() {
        (1..=CRITERIA).collect()
    } else {
        args.criteria
    };
    let mut failed = Vec::new();
    for id in ids {
        let report = acceptance::run(id, engine);
        emit(&format!("{report}\n"))?;
        if !report.passed() {
            failed.push(id.to_string());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::SelftestFailed(format!(
            "criteria failed: {}",
            failed.join(", ")
        )))
    }
}
