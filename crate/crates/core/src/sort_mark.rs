//! Minimal marking by a full descending sort and prefix sums.
//!
//! O(N log N); used throughout the crate as the reference that the
//! linear-time algorithms are checked against.

use crate::error::{check_theta_open, Result};
use crate::indicator::{goal_value, IndicatorVector, MarkingOutcome};
use crate::instrument::{Instrument, Silent};
use crate::sum::CompensatedSum;

/// Indices sorted by descending value (ties by ascending index) and the
/// running sums along that order.
#[derive(Debug, Clone)]
pub struct SortedPrefix {
    pub order: Vec<usize>,
    /// `prefix_sums[k]` is the sum of the first `k` entries of `order`;
    /// `prefix_sums[0] == 0`.
    pub prefix_sums: Vec<f64>,
}

impl SortedPrefix {
    pub fn new(x: &IndicatorVector) -> Self {
        Self::with_instrument(x, &mut Silent)
    }

    pub fn with_instrument<I: Instrument>(x: &IndicatorVector, probe: &mut I) -> Self {
        let values = x.as_slice();
        let mut order: Vec<usize> = (0..values.len()).collect();
        // stable, so equal values keep ascending index order
        order.sort_by(|&a, &b| {
            probe.compare(1);
            values[b].total_cmp(&values[a])
        });
        let mut acc = CompensatedSum::new();
        let mut prefix_sums = Vec::with_capacity(values.len() + 1);
        prefix_sums.push(0.0);
        for &i in &order {
            acc.add(values[i]);
            prefix_sums.push(acc.value());
        }
        Self { order, prefix_sums }
    }

    /// Smallest `n >= 1` with `prefix_sums[n] >= goal`, or `N` if rounding
    /// keeps the full sum just below the goal.
    pub fn minimal_count<I: Instrument>(&self, goal: f64, probe: &mut I) -> usize {
        let len = self.order.len();
        for n in 1..=len {
            probe.compare(1);
            if self.prefix_sums[n] >= goal {
                return n;
            }
        }
        len
    }
}

pub fn sort_mark(x: &IndicatorVector, theta: f64) -> Result<MarkingOutcome> {
    sort_mark_with(x, theta, &mut Silent)
}

pub fn sort_mark_with<I: Instrument>(
    x: &IndicatorVector,
    theta: f64,
    probe: &mut I,
) -> Result<MarkingOutcome> {
    check_theta_open(theta)?;
    let goal = goal_value(x, theta)?;
    let sorted = SortedPrefix::with_instrument(x, probe);
    let n = sorted.minimal_count(goal, probe);
    Ok(MarkingOutcome::from_indices(x, sorted.order[..n].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::satisfies_doerfler;
    use proptest::prelude::*;

    fn iv(v: &[f64]) -> IndicatorVector {
        IndicatorVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_examples() {
        let out = sort_mark(&iv(&[4.0, 1.0, 2.0, 3.0]), 0.5).unwrap();
        assert_eq!(out.marked, vec![0, 3]);
        assert_eq!(out.achieved_sum, 7.0);

        let out = sort_mark(&iv(&[2.0, 2.0, 2.0, 2.0]), 0.5).unwrap();
        assert_eq!(out.marked, vec![0, 1]);

        let out = sort_mark(&iv(&[1.0, 0.0, 0.0, 0.0]), 0.3).unwrap();
        assert_eq!(out.marked, vec![0]);
    }

    #[test]
    fn rejects_theta_outside_open_interval() {
        let x = iv(&[1.0, 2.0]);
        assert!(sort_mark(&x, 1.0).is_err());
        assert!(sort_mark(&x, 0.0).is_err());
    }

    #[test]
    fn prefix_is_sorted_and_complete() {
        let x = iv(&[0.3, 0.9, 0.1, 0.9, 0.0]);
        let sp = SortedPrefix::new(&x);
        assert_eq!(sp.order, vec![1, 3, 0, 2, 4]);
        assert!(sp.prefix_sums.windows(2).all(|w| w[0] <= w[1]));
        assert!((sp.prefix_sums[5] - x.total()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn minimality_characterization(
            values in prop::collection::vec(0.0f64..1.0, 1..200),
            theta in 0.01f64..0.99,
        ) {
            prop_assume!(values.iter().any(|&v| v > 0.0));
            let x = iv(&values);
            let goal = goal_value(&x, theta).unwrap();
            let sp = SortedPrefix::new(&x);
            let out = sort_mark(&x, theta).unwrap();
            let n = out.cardinality();
            prop_assert!(sp.prefix_sums[n - 1] < goal);
            prop_assert!(satisfies_doerfler(&x, theta, &out.marked).unwrap());
            // dropping any marked entry falls short of the goal
            let min_marked = out.marked.iter().map(|&i| x[i]).fold(f64::INFINITY, f64::min);
            prop_assert!(out.achieved_sum - min_marked < goal + x.criterion_tolerance());
        }

        #[test]
        fn cardinality_is_permutation_invariant(
            values in prop::collection::vec(0.0f64..1.0, 1..100),
            theta in 0.01f64..0.99,
            seed in any::<u64>(),
        ) {
            prop_assume!(values.iter().any(|&v| v > 0.0));
            use rand::{seq::SliceRandom, SeedableRng};
            let mut shuffled = values.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let a = sort_mark(&iv(&values), theta).unwrap().cardinality();
            let b = sort_mark(&iv(&shuffled), theta).unwrap().cardinality();
            prop_assert_eq!(a, b);
        }
    }
}
