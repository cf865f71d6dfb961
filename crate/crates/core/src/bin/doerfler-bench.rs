//! Benchmark sweeps over seeded uniform instances, or marking of one
//! indicator file with `--input`.
//!
//! Exit status: 0 on success, 2 on parse or parameter errors, 3 on I/O or
//! allocation failures.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use doerfler::bench::{emit_table, run_bench, BenchConfig, Format, View, DEFAULT_MAX_N};
use doerfler::io::{mark_file, FileError};
use doerfler::Algorithm;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Sort,
    Decrement,
    Binning,
    Quickmark,
    Xstar,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Sort => Algorithm::Sort,
            AlgorithmArg::Decrement => Algorithm::Decrement,
            AlgorithmArg::Binning => Algorithm::Binning,
            AlgorithmArg::Quickmark => Algorithm::QuickMark,
            AlgorithmArg::Xstar => Algorithm::XStar,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "doerfler-bench", version, about = "Dörfler marking benchmarks and file runner")]
struct Cli {
    /// Algorithms to run (comma separated). Bench default: sort,quickmark,xstar.
    /// With --input exactly one is used (default quickmark).
    #[arg(long, value_enum, value_delimiter = ',')]
    algorithm: Vec<AlgorithmArg>,

    /// Marking parameters in (0, 1] (comma separated).
    /// Bench default: 0.1,0.25,0.5,0.75,0.9. With --input default 0.5.
    #[arg(long, value_delimiter = ',')]
    theta: Vec<f64>,

    /// Step parameter of decrement and binning, in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    nu: f64,

    /// Instance sizes (comma separated). Default: 1e3,1e4,...,1e7.
    #[arg(long, value_delimiter = ',', value_parser = parse_size)]
    n: Vec<usize>,

    /// Runs per (N, theta) cell.
    #[arg(long, default_value_t = 30)]
    runs: usize,

    /// Master seed of the instance generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Mark this indicator file (.txt or .f64) instead of benchmarking.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Output path: the marked indices with --input (default
    /// <input>.marked), otherwise the table (default stdout).
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,

    /// Record comparison counts in an extra untimed pass.
    #[arg(long)]
    instrument: bool,

    /// Emit time and comparisons per element (nanoseconds for time).
    #[arg(long)]
    per_element: bool,

    /// Largest accepted instance size.
    #[arg(long, default_value_t = DEFAULT_MAX_N, value_parser = parse_size)]
    max_n: usize,
}

/// Accepts plain integers and powers of ten like `1e6`.
fn parse_size(s: &str) -> Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= usize::MAX as f64 => Ok(v as usize),
        _ => Err(format!("`{s}` is not a size")),
    }
}

const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match cli.input.clone() {
        Some(input) => run_mark(&cli, input),
        None => run_sweep(&cli),
    }
}

fn run_mark(cli: &Cli, input: PathBuf) -> ExitCode {
    if cli.algorithm.len() > 1 || cli.theta.len() > 1 {
        eprintln!("error: --input takes a single --algorithm and --theta");
        return ExitCode::from(USAGE);
    }
    let algorithm = cli.algorithm.first().map_or(Algorithm::QuickMark, |&a| a.into());
    let theta = cli.theta.first().copied().unwrap_or(0.5);
    match mark_file(&input, algorithm, theta, cli.nu, cli.output.as_deref()) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                FileError::Io { .. } => RESOURCE,
                _ => USAGE,
            })
        }
    }
}

fn run_sweep(cli: &Cli) -> ExitCode {
    let defaults = BenchConfig::default();
    let config = BenchConfig {
        algorithms: if cli.algorithm.is_empty() {
            defaults.algorithms
        } else {
            cli.algorithm.iter().map(|&a| a.into()).collect()
        },
        theta_grid: if cli.theta.is_empty() { defaults.theta_grid } else { cli.theta.clone() },
        n_grid: if cli.n.is_empty() { defaults.n_grid } else { cli.n.clone() },
        runs: cli.runs,
        seed: cli.seed,
        nu: cli.nu,
        instrument: cli.instrument,
        max_n: cli.max_n,
    };
    let outcome = match run_bench(&config) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    for cell in &outcome.skipped {
        eprintln!("skipped N = {}: {}", cell.n, cell.reason);
    }
    if !outcome.records.is_empty() {
        let format = match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        };
        let view = if cli.per_element { View::PerElement } else { View::Total };
        let text = emit_table(&outcome.records, format, view);
        match &cli.output {
            Some(path) => {
                if let Err(e) = fs::write(path, text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(RESOURCE);
                }
            }
            None => print!("{text}"),
        }
    }
    if outcome.skipped.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(RESOURCE)
    }
}
