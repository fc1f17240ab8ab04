//! `blockdet` — exact determinants and permanents of signed (di)graphs.
//!
//! Exit codes: 0 success, 1 a cross-check or property failed, 2 bad input,
//! 3 the requested method cannot handle the input.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blockdet_cli::bench::{self, BenchConfig};
use blockdet_cli::check::{self, CheckConfig};
use blockdet_cli::compute::{self, Method, Quantity};
use blockdet_cli::Failure;

#[derive(Parser)]
#[command(name = "blockdet", version)]
#[command(about = "Exact determinants and permanents of signed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Compute a determinant
    Det(ComputeArgs),
    /// Compute a permanent
    Per(ComputeArgs),
    /// Cross-check every evaluation route against the others
    Check(CheckArgs),
    /// Time the block sum against the dense scan on chains of complete blocks
    Bench(BenchArgs),
}

#[derive(Args)]
struct ComputeArgs {
    /// Family descriptor, e.g. `complete:5`, `cycle:6,-1`, `block-graph:3,3@0`
    #[arg(long, value_name = "DESC", required_unless_present = "file", conflicts_with = "file")]
    family: Option<String>,
    /// Graph file in .sdg format
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Evaluation strategy
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
}

#[derive(Args)]
struct CheckArgs {
    /// Run a single named suite instead of all of them
    #[arg(long, value_name = "NAME")]
    suite: Option<String>,
    /// Random cases per suite (exhaustive sweeps ignore this)
    #[arg(long, default_value_t = 300)]
    cases: usize,
    /// Largest graph order for random cases
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    /// Base seed for every random case
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Deliberately mis-sign one formula to prove failures get caught
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Vertices per complete block
    #[arg(long, default_value_t = 8)]
    block_size: usize,
    /// Time chains of 1..=N blocks
    #[arg(long, default_value_t = 4, value_name = "N")]
    blocks: usize,
    /// Skip the dense scan above this order
    #[arg(long, default_value_t = 22)]
    dense_max_n: usize,
    /// Time determinants instead of permanents
    #[arg(long)]
    det: bool,
}

fn main() -> ExitCode {
    if let Ok(text) = std::env::var("BLOCKDET_THREADS") {
        match text.parse::<usize>() {
            Ok(threads) if threads > 0 => blockdet::set_thread_count(threads),
            _ => {
                eprintln!("error: BLOCKDET_THREADS must be a positive integer, got '{text}'");
                return ExitCode::from(2);
            }
        }
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Commands::Det(args) => run_compute(args, Quantity::Det),
        Commands::Per(args) => run_compute(args, Quantity::Per),
        Commands::Check(args) => run_check(args),
        Commands::Bench(args) => run_bench(args),
    }
}

fn run_compute(args: ComputeArgs, quantity: Quantity) -> Result<(), Failure> {
    let input = match (&args.family, &args.file) {
        (Some(desc), None) => compute::load_family(desc)?,
        (None, Some(path)) => compute::load_file(path)?,
        _ => unreachable!("clap enforces exactly one input source"),
    };
    let (report, failure) = compute::run(&input, quantity, args.method)?;
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn run_check(args: CheckArgs) -> Result<(), Failure> {
    let cfg = CheckConfig {
        cases: args.cases,
        max_n: args.max_n,
        seed: args.seed,
        inject_fault: args.inject_fault,
    };
    let outcomes = check::run(args.suite.as_deref(), &cfg)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut failed = 0;
    for o in &outcomes {
        match &o.failure {
            None => writeln!(out, "ok    {:<24} {} cases", o.name, o.cases),
            Some(reason) => {
                failed += 1;
                writeln!(out, "FAIL  {:<24} {reason}", o.name)
            }
        }
        .map_err(|e| Failure::Input(e.to_string()))?;
    }
    if failed > 0 {
        return Err(Failure::Check(format!(
            "{failed} of {} suites failed",
            outcomes.len()
        )));
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), Failure> {
    let cfg = BenchConfig {
        block_size: args.block_size,
        blocks: args.blocks,
        dense_max_n: args.dense_max_n,
        quantity: if args.det { Quantity::Det } else { Quantity::Per },
    };
    let stdout = std::io::stdout();
    bench::run(&cfg, &mut stdout.lock())
}
