//! Minimal marking of a random indicator vector with QuickMark and the
//! in-place threshold kernel.

use doerfler::quickmark::{quickmark_with, set_from_threshold, xstar_kernel, PivotStrategy};
use doerfler::{satisfies_doerfler, Counting, IndicatorVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 100_000;
    let x = IndicatorVector::new((0..n).map(|_| rng.gen::<f64>().powi(4)).collect()).unwrap();
    let theta = 0.5;

    let mut probe = Counting::new();
    let result = quickmark_with(&x, theta, PivotStrategy::Median, &mut probe).unwrap();
    println!("N = {n}, theta = {theta}");
    println!("quickmark: {} marked, x* = {:.6}", result.n, result.x_star);
    println!(
        "  {} comparisons ({:.1} per element) over {} levels",
        probe.comparisons,
        probe.comparisons as f64 / n as f64,
        probe.levels
    );

    let mut scratch = x.as_slice().to_vec();
    let x_star = xstar_kernel(&mut scratch, theta).unwrap();
    let marked = set_from_threshold(&x, theta, x_star).unwrap();
    println!("xstar kernel: x* = {x_star:.6}, {} marked", marked.cardinality());
    assert_eq!(x_star, result.x_star);
    assert!(satisfies_doerfler(&x, theta, &marked.marked).unwrap());
}
