//! Seeded benchmark harness.
//!
//! Instances are uniform(0,1) vectors from ChaCha8 (`rand_chacha`), so the
//! streams are identical on every platform. For size `N` and run `r` the
//! instance seed is the `r`-th output of a ChaCha8 generator seeded with
//! the master seed on stream `N`; the same vectors are therefore used for
//! every θ and every algorithm of a sweep.
//!
//! Timed calls run on the Silent instrumentation. Comparison counts come
//! from a separate untimed pass on the same instance.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithm::{mark, mark_with, Algorithm};
use crate::error::{check_nu, check_theta, MarkError, Result};
use crate::indicator::IndicatorVector;
use crate::instrument::Counting;
use crate::quickmark::{set_from_threshold, xstar_kernel};

pub const DEFAULT_THETAS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];
pub const DEFAULT_SIZES: [usize; 5] = [1_000, 10_000, 100_000, 1_000_000, 10_000_000];
pub const DEFAULT_RUNS: usize = 30;
pub const DEFAULT_MAX_N: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub theta_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub runs: usize,
    pub seed: u64,
    pub nu: f64,
    /// Also record comparison counts (one extra untimed pass per call).
    pub instrument: bool,
    /// Sizes above this are rejected.
    pub max_n: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: vec![Algorithm::Sort, Algorithm::QuickMark, Algorithm::XStar],
            theta_grid: DEFAULT_THETAS.to_vec(),
            n_grid: DEFAULT_SIZES.to_vec(),
            runs: DEFAULT_RUNS,
            seed: 0,
            nu: 0.5,
            instrument: false,
            max_n: DEFAULT_MAX_N,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        let empty = |name| MarkError::ParameterOutOfRange {
            name,
            value: 0.0,
            expected: "a nonempty list",
        };
        if self.algorithms.is_empty() {
            return Err(empty("algorithm"));
        }
        if self.theta_grid.is_empty() {
            return Err(empty("theta"));
        }
        if self.n_grid.is_empty() {
            return Err(empty("n"));
        }
        if self.runs == 0 {
            return Err(MarkError::ParameterOutOfRange {
                name: "runs",
                value: 0.0,
                expected: "runs >= 1",
            });
        }
        self.theta_grid.iter().try_for_each(|&t| check_theta(t))?;
        check_nu(self.nu)?;
        for &n in &self.n_grid {
            if n == 0 || n > self.max_n {
                return Err(MarkError::ParameterOutOfRange {
                    name: "n",
                    value: n as f64,
                    expected: "1 <= n <= max-n",
                });
            }
        }
        Ok(())
    }
}

/// One timed call.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub theta: f64,
    /// 1-based.
    pub run: usize,
    pub seconds: f64,
    /// Present when the config asks for instrumentation.
    pub comparisons: Option<u64>,
    pub seed: u64,
    pub cardinality: usize,
}

/// A size that could not be benchmarked.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCell {
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub skipped: Vec<SkippedCell>,
}

/// Instance seeds for size `n`, one per run.
pub fn instance_seeds(master: u64, n: usize, runs: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(n as u64);
    (0..runs).map(|_| rng.next_u64()).collect()
}

/// `n` uniform(0,1) values from `seed`.
pub fn uniform_instance(seed: u64, n: usize) -> std::result::Result<Vec<f64>, String> {
    let mut values = Vec::new();
    values
        .try_reserve_exact(n)
        .map_err(|e| format!("cannot allocate {n} values: {e}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    values.extend((0..n).map(|_| rng.gen::<f64>()));
    Ok(values)
}

/// Runs the full sweep. Sizes whose buffers cannot be allocated are
/// reported in [`BenchOutcome::skipped`] and the sweep continues.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome> {
    config.validate()?;
    let mut outcome = BenchOutcome::default();
    for &n in &config.n_grid {
        if let Err(reason) = bench_size(config, n, &mut outcome.records) {
            outcome.skipped.push(SkippedCell { n, reason });
        }
    }
    Ok(outcome)
}

fn bench_size(config: &BenchConfig, n: usize, records: &mut Vec<BenchRecord>) -> std::result::Result<(), String> {
    let mut scratch: Vec<f64> = Vec::new();
    scratch
        .try_reserve_exact(n)
        .map_err(|e| format!("cannot allocate scratch of {n} values: {e}"))?;
    for (r, seed) in instance_seeds(config.seed, n, config.runs).into_iter().enumerate() {
        let values = uniform_instance(seed, n)?;
        let x = match IndicatorVector::new(values) {
            Ok(x) => x,
            // all zeros: impossible in practice for uniform doubles
            Err(e) => return Err(e.to_string()),
        };
        for &theta in &config.theta_grid {
            for &algorithm in &config.algorithms {
                let (seconds, cardinality) =
                    time_call(algorithm, &x, theta, config.nu, &mut scratch).map_err(|e| e.to_string())?;
                let comparisons = if config.instrument {
                    let mut probe = Counting::new();
                    mark_with(algorithm, &x, theta, config.nu, &mut probe).map_err(|e| e.to_string())?;
                    Some(probe.comparisons)
                } else {
                    None
                };
                records.push(BenchRecord {
                    algorithm,
                    n,
                    theta,
                    run: r + 1,
                    seconds,
                    comparisons,
                    seed,
                    cardinality,
                });
            }
        }
    }
    Ok(())
}

fn time_call(
    algorithm: Algorithm,
    x: &IndicatorVector,
    theta: f64,
    nu: f64,
    scratch: &mut Vec<f64>,
) -> Result<(f64, usize)> {
    if algorithm == Algorithm::XStar && theta < 1.0 {
        // the kernel destroys its input, so it gets a fresh copy made
        // outside the timed region
        scratch.clear();
        scratch.extend_from_slice(x.as_slice());
        let start = Instant::now();
        let x_star = xstar_kernel(scratch, theta)?;
        let outcome = set_from_threshold(x, theta, x_star)?;
        return Ok((start.elapsed().as_secs_f64(), outcome.cardinality()));
    }
    let start = Instant::now();
    let marked = mark(algorithm, x, theta, nu)?;
    Ok((start.elapsed().as_secs_f64(), marked.outcome.cardinality()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stat {
    Min,
    Avg,
    Max,
}

impl Stat {
    pub const ALL: [Stat; 3] = [Stat::Min, Stat::Avg, Stat::Max];

    pub fn name(self) -> &'static str {
        match self {
            Stat::Min => "min",
            Stat::Avg => "avg",
            Stat::Max => "max",
        }
    }

    fn apply(self, values: &[f64]) -> f64 {
        match self {
            Stat::Min => values.iter().copied().fold(f64::INFINITY, f64::min),
            Stat::Max => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Stat::Avg => values.iter().sum::<f64>() / values.len() as f64,
        }
    }
}

/// min/avg/max of one `(algorithm, N, θ)` cell. Time and comparison
/// statistics are taken independently.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStat {
    pub algorithm: Algorithm,
    pub n: usize,
    pub theta: f64,
    pub stat: Stat,
    pub seconds: f64,
    pub comparisons: Option<f64>,
}

/// Groups records by cell, in order of first appearance, and emits three
/// rows per cell.
pub fn aggregate(records: &[BenchRecord]) -> Vec<CellStat> {
    type CellKey = (Algorithm, usize, u64);
    let mut cells: Vec<(CellKey, Vec<&BenchRecord>)> = Vec::new();
    for r in records {
        let key = (r.algorithm, r.n, r.theta.to_bits());
        match cells.iter_mut().find(|(k, _)| *k == key) {
            Some((_, group)) => group.push(r),
            None => cells.push((key, vec![r])),
        }
    }
    let mut rows = Vec::with_capacity(3 * cells.len());
    for ((algorithm, n, _), group) in cells {
        let seconds: Vec<f64> = group.iter().map(|r| r.seconds).collect();
        let comparisons: Option<Vec<f64>> = group
            .iter()
            .map(|r| r.comparisons.map(|c| c as f64))
            .collect();
        for stat in Stat::ALL {
            rows.push(CellStat {
                algorithm,
                n,
                theta: group[0].theta,
                stat,
                seconds: stat.apply(&seconds),
                comparisons: comparisons.as_deref().map(|c| stat.apply(c)),
            });
        }
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Table,
}

/// Absolute values, or time and comparisons divided by `N` with time in
/// nanoseconds per element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum View {
    #[default]
    Total,
    PerElement,
}

pub const CSV_HEADER: &str = "algorithm,N,theta,stat,seconds,comparisons";
pub const PER_ELEMENT_HEADER: &str = "algorithm,N,theta,stat,ns_per_element,comparisons_per_element";

/// Renders the min/avg/max rows of `records`. Comparison cells are empty
/// when the records carry no counts.
pub fn emit_table(records: &[BenchRecord], format: Format, view: View) -> String {
    let rows = aggregate(records);
    let header = match view {
        View::Total => CSV_HEADER,
        View::PerElement => PER_ELEMENT_HEADER,
    };
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|row| {
            let (time, comparisons) = match view {
                View::Total => (format!("{:.6e}", row.seconds), row.comparisons.map(|c| format!("{c}"))),
                View::PerElement => {
                    let n = row.n as f64;
                    (
                        format!("{:.4}", row.seconds * 1e9 / n),
                        row.comparisons.map(|c| format!("{:.4}", c / n)),
                    )
                }
            };
            [
                row.algorithm.to_string(),
                row.n.to_string(),
                row.theta.to_string(),
                row.stat.name().to_string(),
                time,
                comparisons.unwrap_or_default(),
            ]
        })
        .collect();

    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(header);
            out.push('\n');
            for c in &cells {
                out.push_str(&c.join(","));
                out.push('\n');
            }
        }
        Format::Table => {
            let titles: Vec<&str> = header.split(',').collect();
            let mut widths: Vec<usize> = titles.iter().map(|t| t.len()).collect();
            for c in &cells {
                for (w, s) in widths.iter_mut().zip(c) {
                    *w = (*w).max(s.len());
                }
            }
            let line = |fields: Vec<&str>, out: &mut String| {
                let padded: Vec<String> = fields
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect();
                let _ = writeln!(out, "{}", padded.join("  ").trim_end());
            };
            line(titles, &mut out);
            for c in &cells {
                line(c.iter().map(String::as_str).collect(), &mut out);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: Algorithm, run: usize, seconds: f64, comparisons: u64) -> BenchRecord {
        BenchRecord {
            algorithm,
            n: 100,
            theta: 0.5,
            run,
            seconds,
            comparisons: Some(comparisons),
            seed: 1,
            cardinality: 10,
        }
    }

    #[test]
    fn one_cell_gives_three_rows() {
        let records: Vec<_> = (1..=30).map(|r| record(Algorithm::Sort, r, r as f64, 10 * r as u64)).collect();
        let csv = emit_table(&records, Format::Csv, View::Total);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "sort,100,0.5,min,1.000000e0,10");
        assert_eq!(lines[2], "sort,100,0.5,avg,1.550000e1,155");
        assert_eq!(lines[3], "sort,100,0.5,max,3.000000e1,300");
    }

    #[test]
    fn two_algorithms_give_six_rows() {
        let records = vec![record(Algorithm::Sort, 1, 1.0, 5), record(Algorithm::XStar, 1, 2.0, 6)];
        assert_eq!(emit_table(&records, Format::Csv, View::Total).lines().count(), 7);
        let table = emit_table(&records, Format::Table, View::PerElement);
        assert_eq!(table.lines().count(), 7);
        assert!(table.lines().next().unwrap().contains("ns_per_element"));
    }

    #[test]
    fn uninstrumented_comparisons_are_empty() {
        let mut r = record(Algorithm::Sort, 1, 1.0, 0);
        r.comparisons = None;
        let csv = emit_table(&[r], Format::Csv, View::Total);
        assert!(csv.lines().nth(1).unwrap().ends_with(",1.000000e0,"));
    }

    #[test]
    fn validation() {
        let ok = BenchConfig {
            n_grid: vec![10],
            runs: 1,
            ..BenchConfig::default()
        };
        assert!(ok.validate().is_ok());
        assert!(BenchConfig { runs: 0, ..ok.clone() }.validate().is_err());
        assert!(BenchConfig { theta_grid: vec![], ..ok.clone() }.validate().is_err());
        assert!(BenchConfig { theta_grid: vec![1.5], ..ok.clone() }.validate().is_err());
        assert!(BenchConfig { n_grid: vec![11], max_n: 10, ..ok.clone() }.validate().is_err());
    }

    #[test]
    fn seeds_are_reproducible_and_size_specific() {
        assert_eq!(instance_seeds(7, 1000, 3), instance_seeds(7, 1000, 3));
        assert_ne!(instance_seeds(7, 1000, 3), instance_seeds(7, 1001, 3));
        assert_ne!(instance_seeds(7, 1000, 3), instance_seeds(8, 1000, 3));
        assert_eq!(uniform_instance(5, 50).unwrap(), uniform_instance(5, 50).unwrap());
    }
}
