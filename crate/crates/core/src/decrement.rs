//! Sorting-free marking by linearly decreasing thresholds.
//!
//! Sweep `k = 1..=⌈1/ν⌉` over the indices in ascending order, selecting
//! every unselected entry with `x_i > (1 − kν)·max(x)`, and stop as soon as
//! the selected mass reaches the goal. Costs O(N/ν), always satisfies the
//! criterion, and is not quasi-minimal: see
//! [`gen_counterexample`](crate::oracle::gen_counterexample).

use crate::error::{check_nu, check_theta_open, Result};
use crate::indicator::{goal_value, IndicatorVector, MarkingOutcome};
use crate::instrument::{Instrument, Silent};
use crate::sum::CompensatedSum;

/// Where the goal check happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepTermination {
    /// After every selection, possibly mid-sweep.
    #[default]
    Immediate,
    /// Only at the end of a sweep, as in the original formulation. Kept to
    /// demonstrate that it marks every positive entry of a constant vector;
    /// not a supported marking strategy.
    LegacyEndOfSweep,
}

/// Selection bookkeeping of one decrement run.
#[derive(Debug, Clone)]
pub struct DecrementState {
    /// Selected indices in selection order.
    pub selection: Vec<usize>,
    selected: Vec<bool>,
    pub max_value: f64,
    /// Sweep counter, `1..=⌈1/ν⌉`.
    pub sweep: usize,
    pub running_sum: CompensatedSum,
}

impl DecrementState {
    fn new(len: usize, max_value: f64) -> Self {
        Self {
            selection: Vec::new(),
            selected: vec![false; len],
            max_value,
            sweep: 0,
            running_sum: CompensatedSum::new(),
        }
    }

    pub fn is_selected(&self, index: usize) -> bool {
        self.selected[index]
    }

    fn select(&mut self, index: usize, value: f64) {
        self.selected[index] = true;
        self.selection.push(index);
        self.running_sum.add(value);
    }
}

/// Number of sweeps, `⌈1/ν⌉`.
pub fn sweep_count(nu: f64) -> usize {
    (1.0 / nu).ceil() as usize
}

pub fn decrement_mark(x: &IndicatorVector, theta: f64, nu: f64) -> Result<MarkingOutcome> {
    decrement_mark_with(x, theta, nu, SweepTermination::Immediate, &mut Silent)
}

pub fn decrement_mark_with<I: Instrument>(
    x: &IndicatorVector,
    theta: f64,
    nu: f64,
    termination: SweepTermination,
    probe: &mut I,
) -> Result<MarkingOutcome> {
    check_theta_open(theta)?;
    check_nu(nu)?;
    let values = x.as_slice();
    let goal = goal_value(x, theta)?;
    let mut state = DecrementState::new(values.len(), x.max());
    let sweeps = sweep_count(nu);

    'sweeps: for k in 1..=sweeps {
        state.sweep = k;
        let mut threshold = (1.0 - k as f64 * nu) * state.max_value;
        if k == sweeps {
            // kν ≥ 1 in exact arithmetic; keep rounding from excluding tiny entries
            threshold = threshold.min(0.0);
        }
        for (i, &value) in values.iter().enumerate() {
            if state.is_selected(i) {
                continue;
            }
            probe.compare(1);
            if value > threshold {
                state.select(i, value);
                if termination == SweepTermination::Immediate {
                    probe.compare(1);
                    if state.running_sum.value() >= goal {
                        break 'sweeps;
                    }
                }
            }
        }
        if termination == SweepTermination::LegacyEndOfSweep {
            probe.compare(1);
            if state.running_sum.value() >= goal {
                break;
            }
        }
    }
    Ok(MarkingOutcome::from_indices(x, state.selection))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::satisfies_doerfler;
    use crate::instrument::Counting;
    use proptest::prelude::*;

    fn iv(v: &[f64]) -> IndicatorVector {
        IndicatorVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hand_executed_example() {
        // sweep 1 threshold 2: take 4 (sum 4), skip 1 and 2 (not > 2), take 3 (sum 7 >= 5)
        let out = decrement_mark(&iv(&[4.0, 1.0, 2.0, 3.0]), 0.5, 0.5).unwrap();
        assert_eq!(out.marked, vec![0, 3]);
    }

    #[test]
    fn constant_vector_marks_ceil_theta_n() {
        for n in [1usize, 2, 5, 10, 37] {
            for theta in [0.1, 0.25, 0.5, 0.75] {
                if theta > (n as f64 - 1.0) / n as f64 && n > 1 {
                    continue;
                }
                let x = iv(&vec![3.0; n]);
                let out = decrement_mark(&x, theta, 0.5).unwrap();
                // ⌈θN⌉, evaluated against the float goal
                let goal = goal_value(&x, theta).unwrap();
                let expected = (1..=n).find(|&m| m as f64 * 3.0 >= goal).unwrap();
                assert_eq!(expected, (theta * n as f64).ceil().max(1.0) as usize);
                assert_eq!(out.cardinality(), expected, "n={n} theta={theta}");
                assert_eq!(out.marked, (0..expected).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn legacy_termination_marks_everything_on_constant_vectors() {
        let x = iv(&[2.0; 12]);
        for theta in [0.1, 0.5, 0.9] {
            let out = decrement_mark_with(
                &x,
                theta,
                0.5,
                SweepTermination::LegacyEndOfSweep,
                &mut Silent,
            )
            .unwrap();
            assert_eq!(out.cardinality(), 12);
        }
    }

    #[test]
    fn sweep_counts() {
        assert_eq!(sweep_count(0.5), 2);
        assert_eq!(sweep_count(0.3), 4);
        assert_eq!(sweep_count(0.7), 2);
        assert_eq!(sweep_count(0.1), 10);
    }

    #[test]
    fn rejects_parameters() {
        let x = iv(&[1.0]);
        assert!(decrement_mark(&x, 0.5, 0.0).is_err());
        assert!(decrement_mark(&x, 0.5, 1.0).is_err());
        assert!(decrement_mark(&x, 1.0, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn satisfies_criterion_within_cost_bound(
            values in prop::collection::vec(0.0f64..1.0, 1..300),
            theta in 0.01f64..0.99,
            nu in 0.05f64..0.95,
        ) {
            prop_assume!(values.iter().any(|&v| v > 0.0));
            let x = iv(&values);
            let mut probe = Counting::new();
            let out = decrement_mark_with(&x, theta, nu, SweepTermination::Immediate, &mut probe).unwrap();
            prop_assert!(satisfies_doerfler(&x, theta, &out.marked).unwrap());
            let bound = 4 * x.len() as u64 * sweep_count(nu) as u64;
            prop_assert!(probe.comparisons <= bound);
        }
    }
}
