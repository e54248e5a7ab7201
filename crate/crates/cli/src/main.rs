//! `invmult`: invert totient and divisor-power-sum values from the command line.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invmult::oracle::oracle_preimages;
use invmult::report::{to_json, to_text, value_json, value_text};
use invmult::table::{table_row, Family, TableRow};
use invmult::{invert_kind, parse_input, AggregateKind, Error, Function, InvertOptions};
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "invmult", version, about = "Inverses of multiplicative functions")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    invert: InvertArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute f⁻¹(n) or an aggregate of it (the default command).
    Invert(InvertArgs),
    /// One row per member of an input family.
    Table(TableArgs),
    /// Brute-force pre-images by direct scan, for cross-checking.
    Oracle(OracleArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FunctionArg {
    Phi,
    Sigma,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Factorial,
    Power10,
    Primorial,
}

#[derive(Args, Debug, Clone)]
struct FunctionArgs {
    #[arg(long, value_enum, default_value = "phi")]
    function: FunctionArg,

    /// Power k for sigma.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

impl FunctionArgs {
    fn function(&self) -> Function {
        match self.function {
            FunctionArg::Phi => Function::Phi,
            FunctionArg::Sigma => Function::Sigma(self.k),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct InvertArgs {
    #[command(flatten)]
    common: FunctionArgs,

    /// set, count, sum, sumpow:Q, min or max.
    #[arg(long, default_value = "set", value_parser = parse_aggregate)]
    aggregate: AggregateKind,

    /// e.g. 5040, 2^4*3^2*5*7, 10!, 7#, 10^6, 3!*5#.
    #[arg(long)]
    n: Option<String>,

    /// Also report the result for every divisor of n.
    #[arg(long)]
    all_divisors: bool,

    /// Print operation counts and timing to stderr.
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug, Clone)]
struct TableArgs {
    #[command(flatten)]
    common: FunctionArgs,

    #[arg(long, value_enum)]
    family: FamilyArg,

    #[arg(long)]
    from: u64,

    #[arg(long)]
    to: u64,

    /// Comma-separated aggregates, one column each.
    #[arg(long, default_value = "count,min,max", value_delimiter = ',', value_parser = parse_aggregate)]
    aggregate: Vec<AggregateKind>,
}

#[derive(Args, Debug, Clone)]
struct OracleArgs {
    #[command(flatten)]
    common: FunctionArgs,

    #[arg(long)]
    n: u64,

    /// Scan m = 1..=bound.
    #[arg(long)]
    bound: u64,
}

fn parse_aggregate(s: &str) -> Result<AggregateKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::ResourceLimit(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn run_invert(args: &InvertArgs) -> Result<(), Error> {
    let Some(text) = &args.n else {
        return Err(Error::InvalidInput("--n is required".into()));
    };
    let n = parse_input(text)?.factorization()?;
    let options = InvertOptions { all_divisors: args.all_divisors, ..Default::default() };
    let report = invert_kind(&n, &args.common.function(), args.aggregate, &options)?;
    match args.common.format {
        Format::Json => emit(&to_json(&report)),
        Format::Text => emit(&to_text(&report)),
    }
    if args.stats {
        eprintln!(
            "n={} tau={} atomic_series={} mul={} add={} mul_bound={} elapsed_ms={:.3}",
            n,
            report.divisor_count,
            report.atomic_count,
            report.counter.mul_count,
            report.counter.add_count,
            report.mul_bound(),
            report.elapsed.as_secs_f64() * 1e3
        );
    }
    Ok(())
}

fn run_table(args: &TableArgs) -> Result<(), Error> {
    if args.from > args.to {
        return Err(Error::InvalidInput("--from must not exceed --to".into()));
    }
    let family = match args.family {
        FamilyArg::Factorial => Family::Factorial,
        FamilyArg::Power10 => Family::Power10,
        FamilyArg::Primorial => Family::Primorial,
    };
    let f = args.common.function();
    let options = InvertOptions::default();
    let rows: Vec<TableRow> = (args.from..=args.to)
        .into_par_iter()
        .map(|m| table_row(family, m, f, &args.aggregate, &options))
        .collect::<Result<_, _>>()?;
    match args.common.format {
        Format::Text => {
            let header: Vec<String> = args.aggregate.iter().map(ToString::to_string).collect();
            emit(&format!("m\t{}", header.join("\t")));
            for row in &rows {
                let cells: Vec<String> = row.columns.iter().map(|c| value_text(c.value.as_ref())).collect();
                emit(&format!("{}\t{}", row.index, cells.join("\t")));
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let results: Vec<Value> = row
                        .columns
                        .iter()
                        .map(|c| json!({ "aggregate": c.aggregate.to_string(), "result": value_json(c.value.as_ref()) }))
                        .collect();
                    json!({ "m": row.index, "n": row.n.value().to_string(), "results": results })
                })
                .collect();
            let doc = json!({ "family": family.to_string(), "function": f.to_string(), "rows": rows });
            emit(&doc.to_string());
        }
    }
    Ok(())
}

fn run_oracle(args: &OracleArgs) -> Result<(), Error> {
    let f = args.common.function();
    if args.n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let found = oracle_preimages(f, args.n, args.bound)?;
    match args.common.format {
        Format::Text => {
            if found.is_empty() {
                emit("EMPTY");
            } else {
                let items: Vec<String> = found.iter().map(u64::to_string).collect();
                emit(&format!("[{}]", items.join(", ")));
            }
        }
        Format::Json => {
            let result: Vec<String> = found.iter().map(u64::to_string).collect();
            let doc = json!({
                "n": args.n.to_string(),
                "function": f.to_string(),
                "bound": args.bound.to_string(),
                "result": result,
            });
            emit(&doc.to_string());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        None => run_invert(&cli.invert),
        Some(Command::Invert(args)) => run_invert(args),
        Some(Command::Table(args)) => run_table(args),
        Some(Command::Oracle(args)) => run_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => fail(&err),
    }
}
