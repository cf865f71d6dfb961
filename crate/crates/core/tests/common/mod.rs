#![allow(dead_code)]

use doerfler::IndicatorVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const THETAS: [f64; 7] = [0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Uniform,
    /// Values drawn from a handful of levels, so long runs of ties.
    TieHeavy,
    /// Mostly zeros.
    Sparse,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

pub fn tie_heavy(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let levels = rng.gen_range(1..=6);
    let scale = [1.0, 0.1, 1.0 / 3.0, 7.0][rng.gen_range(0..4)];
    (0..n).map(|_| rng.gen_range(0..=levels) as f64 * scale).collect()
}

pub fn sparse(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let density = rng.gen_range(0.001..0.1);
    (0..n)
        .map(|_| if rng.gen_bool(density) { rng.gen::<f64>() } else { 0.0 })
        .collect()
}

/// A valid vector of the given kind; all-zero draws get one positive entry.
pub fn instance(rng: &mut ChaCha8Rng, kind: Kind, n: usize) -> IndicatorVector {
    let mut values = match kind {
        Kind::Uniform => uniform(rng, n),
        Kind::TieHeavy => tie_heavy(rng, n),
        Kind::Sparse => sparse(rng, n),
    };
    if values.iter().all(|&v| v == 0.0) {
        let j = rng.gen_range(0..n);
        values[j] = 0.5;
    }
    IndicatorVector::new(values).unwrap()
}

/// Seeded mixed suite: 70% uniform, 15% tie-heavy, 15% sparse, sizes in
/// `1..=max_n`, θ cycling through [`THETAS`].
pub fn suite(seed: u64, count: usize, max_n: usize) -> impl Iterator<Item = (Kind, IndicatorVector, f64)> {
    let mut rng = rng(seed);
    (0..count).map(move |i| {
        let kind = match rng.gen_range(0..20) {
            0..=13 => Kind::Uniform,
            14..=16 => Kind::TieHeavy,
            _ => Kind::Sparse,
        };
        // a quarter of the instances are small, where edge cases live
        let n = if rng.gen_bool(0.25) {
            rng.gen_range(1..=20.min(max_n))
        } else {
            rng.gen_range(1..=max_n)
        };
        let x = instance(&mut rng, kind, n);
        (kind, x, THETAS[i % THETAS.len()])
    })
}
