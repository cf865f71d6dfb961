//! Quasi-minimal marking at linear cost by geometric binning.
//!
//! Entries are grouped into bins `B_k = { j : ν^{k+1} < x_j/M ≤ ν^k }` for
//! `k = 0..=K` plus a tail bin, the bins are concatenated in order and the
//! shortest prefix reaching the goal is marked. The result has at most
//! `⌈N_min/ν⌉` entries.

use crate::error::{check_nu, check_theta_open, Result};
use crate::indicator::{goal_value, IndicatorVector, MarkingOutcome};
use crate::instrument::{Instrument, Silent};
use crate::sum::CompensatedSum;

/// Bin assignment of one binning run.
#[derive(Debug, Clone)]
pub struct BinLayout {
    /// Index of the last geometric bin; `bins.len() == k_max + 2`.
    pub k_max: usize,
    /// `bins[k]` holds ascending indices; the last entry is the tail bin.
    pub bins: Vec<Vec<usize>>,
    pub max_value: f64,
}

impl BinLayout {
    pub fn new(x: &IndicatorVector, theta: f64, nu: f64) -> Result<Self> {
        Self::with_instrument(x, theta, nu, &mut Silent)
    }

    pub fn with_instrument<I: Instrument>(
        x: &IndicatorVector,
        theta: f64,
        nu: f64,
        probe: &mut I,
    ) -> Result<Self> {
        let k_max = compute_k(x, theta, nu)?;
        probe.compare(k_max as u64 + 1);
        let max_value = x.max();
        // bounds[k] = ν^k by repeated multiplication, k = 0..=K+1
        let mut bounds = Vec::with_capacity(k_max + 2);
        let mut power = 1.0;
        for _ in 0..=k_max + 1 {
            bounds.push(power);
            power *= nu;
        }
        let log_nu = nu.ln();
        let mut bins = vec![Vec::new(); k_max + 2];
        for (j, &value) in x.as_slice().iter().enumerate() {
            let k = bin_index(value / max_value, &bounds, log_nu, probe);
            bins[k].push(j);
        }
        Ok(Self {
            k_max,
            bins,
            max_value,
        })
    }

    pub fn tail(&self) -> &[usize] {
        &self.bins[self.k_max + 1]
    }

    /// Concatenation `B_0, B_1, …, B_{K+1}`.
    pub fn permutation(&self) -> impl Iterator<Item = usize> + '_ {
        self.bins.iter().flatten().copied()
    }
}

/// Finds `k` with `bounds[k+1] < ratio <= bounds[k]`, or the tail slot
/// `bounds.len() - 1` when `ratio <= bounds[K+1]`.
///
/// The logarithm only provides a starting guess; membership is decided by
/// comparisons against the precomputed powers, so rounding in `ln` cannot
/// misplace an entry and each entry costs O(1) comparisons.
fn bin_index<I: Instrument>(ratio: f64, bounds: &[f64], log_nu: f64, probe: &mut I) -> usize {
    let tail = bounds.len() - 1;
    probe.compare(1);
    if ratio <= bounds[tail] {
        return tail;
    }
    let guess = (ratio.ln() / log_nu).floor();
    let mut k = if guess.is_finite() && guess > 0.0 {
        (guess as usize).min(tail - 1)
    } else {
        0
    };
    loop {
        probe.compare(1);
        if ratio > bounds[k] {
            k -= 1;
            continue;
        }
        probe.compare(1);
        if ratio <= bounds[k + 1] {
            k += 1;
            continue;
        }
        return k;
    }
}

/// Minimal `K ≥ 0` with `ν^{K+1}·max(x) ≤ (1−θ)/θ · v/N`.
pub fn compute_k(x: &IndicatorVector, theta: f64, nu: f64) -> Result<usize> {
    check_theta_open(theta)?;
    check_nu(nu)?;
    let goal = goal_value(x, theta)?;
    let bound = (1.0 - theta) / theta * goal / x.len() as f64;
    let mut level = nu * x.max();
    let mut k = 0;
    while level > bound {
        level *= nu;
        k += 1;
    }
    Ok(k)
}

pub fn binning_mark(x: &IndicatorVector, theta: f64, nu: f64) -> Result<MarkingOutcome> {
    binning_mark_with(x, theta, nu, &mut Silent)
}

pub fn binning_mark_with<I: Instrument>(
    x: &IndicatorVector,
    theta: f64,
    nu: f64,
    probe: &mut I,
) -> Result<MarkingOutcome> {
    let layout = BinLayout::with_instrument(x, theta, nu, probe)?;
    let goal = goal_value(x, theta)?;
    let mut acc = CompensatedSum::new();
    let mut marked = Vec::new();
    for j in layout.permutation() {
        marked.push(j);
        acc.add(x[j]);
        probe.compare(1);
        if acc.value() >= goal {
            break;
        }
    }
    Ok(MarkingOutcome::from_indices(x, marked))
}
