//! A small benchmark sweep with comparison counts, printed as a table and
//! in the per-element view.

use doerfler::bench::{emit_table, run_bench, BenchConfig, Format, View};
use doerfler::Algorithm;

fn main() {
    let config = BenchConfig {
        algorithms: vec![Algorithm::Sort, Algorithm::QuickMark, Algorithm::XStar],
        theta_grid: vec![0.25, 0.75],
        n_grid: vec![1_000, 10_000, 100_000],
        runs: 5,
        seed: 7,
        instrument: true,
        ..BenchConfig::default()
    };
    let outcome = run_bench(&config).unwrap();
    print!("{}", emit_table(&outcome.records, Format::Table, View::Total));
    println!();
    print!("{}", emit_table(&outcome.records, Format::Csv, View::PerElement));
}
