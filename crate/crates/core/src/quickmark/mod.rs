//! Minimal Dörfler marking in linear time.
//!
//! QuickMark adapts selection-style divide and conquer to the marking
//! problem. Each step partitions the active segment of a permutation around
//! a pivot value into `greater | equal | smaller` blocks and then either
//!
//! * recurses into the greater block if it alone reaches the residual goal,
//! * stops inside the equal block, marking just enough copies of the pivot,
//! * or consumes `greater ∪ equal` and recurses into the smaller block.
//!
//! The marked set is a prefix of the final permutation and has minimal
//! cardinality. Its smallest value, the threshold `x*`, does not depend on
//! the pivot strategy. With [`PivotStrategy::Median`] the total cost is
//! linear in the worst case.
//!
//! [`xstar_kernel`] is the contiguous variant: it permutes a scratch copy of
//! the values in place instead of an index array, and
//! [`set_from_threshold`] recovers the marked set from `x*`.

mod kernel;
mod partition;
mod pivot;

pub use kernel::{set_from_threshold, xstar_kernel, xstar_kernel_with, xstar_mark, xstar_mark_with};
pub use partition::{partition, PartitionOutcome};
pub use pivot::{pivot_median, select_nth_smallest, PivotStrategy};

use crate::error::{check_theta_open, MarkError, Result};
use crate::indicator::{goal_value, IndicatorVector, MarkingOutcome};
use crate::instrument::{Instrument, Silent};
use crate::sum::CompensatedSum;
use partition::{check_partition, partition_with};
use pivot::PivotChooser;

/// Recursion state of one QuickMark call: the permutation, the active
/// segment `lo..hi` and the mass already committed before `lo`.
///
/// The residual goal is `goal − consumed`; it is kept in this split form so
/// that every goal test compares one compensated sum against the fixed
/// `goal`.
#[derive(Debug, Clone)]
pub struct SelectionState {
    pub perm: Vec<usize>,
    pub lo: usize,
    pub hi: usize,
    pub goal: f64,
    pub consumed: CompensatedSum,
}

impl SelectionState {
    /// Identity permutation over the whole vector.
    pub fn initial(x: &IndicatorVector, theta: f64) -> Result<Self> {
        check_theta_open(theta)?;
        Ok(Self {
            perm: (0..x.len()).collect(),
            lo: 0,
            hi: x.len(),
            goal: goal_value(x, theta)?,
            consumed: CompensatedSum::new(),
        })
    }

    pub fn residual_goal(&self) -> f64 {
        self.goal - self.consumed.value()
    }

    /// Checks admissibility of the state:
    ///
    /// * everything before `lo` is strictly greater than everything from
    ///   `lo` on, and everything before `hi` strictly greater than
    ///   everything from `hi` on;
    /// * `0 < residual = goal − Σ perm[..lo] ≤ Σ perm[lo..hi]`, up to the
    ///   criterion tolerance.
    pub fn check_admissible(&self, x: &IndicatorVector) -> std::result::Result<(), String> {
        let values = x.as_slice();
        let (lo, hi) = (self.lo, self.hi);
        if !(lo < hi && hi <= self.perm.len()) {
            return Err(format!("empty or out-of-range segment {lo}..{hi}"));
        }
        let min_of = |r: std::ops::Range<usize>| {
            self.perm[r].iter().map(|&i| values[i]).fold(f64::INFINITY, f64::min)
        };
        let max_of = |r: std::ops::Range<usize>| {
            self.perm[r].iter().map(|&i| values[i]).fold(f64::NEG_INFINITY, f64::max)
        };
        let n = self.perm.len();
        if lo > 0 && min_of(0..lo) <= max_of(lo..n) {
            return Err(format!("prefix before {lo} does not strictly dominate the rest"));
        }
        if hi < n && min_of(0..hi) <= max_of(hi..n) {
            return Err(format!("entries after {hi} are not strictly smaller"));
        }
        let tol = x.criterion_tolerance();
        let committed: CompensatedSum = self.perm[..lo].iter().map(|&i| values[i]).collect();
        let residual = self.residual_goal();
        if (committed.value() - self.consumed.value()).abs() > tol {
            return Err(format!(
                "committed mass {} differs from tracked mass {}",
                committed.value(),
                self.consumed.value()
            ));
        }
        if residual <= 0.0 {
            return Err(format!("residual goal {residual} is not positive"));
        }
        let active: CompensatedSum = self.perm[lo..hi].iter().map(|&i| values[i]).collect();
        if residual > active.value() + tol {
            return Err(format!(
                "residual goal {residual} exceeds segment mass {}",
                active.value()
            ));
        }
        Ok(())
    }
}

/// Output of QuickMark: the marked set is `perm[..n]`.
#[derive(Debug, Clone)]
pub struct QuickMarkResult {
    pub perm: Vec<usize>,
    pub n: usize,
    /// Smallest marked value.
    pub x_star: f64,
}

impl QuickMarkResult {
    pub fn marked_indices(&self) -> &[usize] {
        &self.perm[..self.n]
    }

    pub fn outcome(&self, x: &IndicatorVector) -> MarkingOutcome {
        MarkingOutcome::from_indices(x, self.marked_indices().to_vec())
    }
}

pub fn quickmark(x: &IndicatorVector, theta: f64, pivot: PivotStrategy) -> Result<QuickMarkResult> {
    quickmark_with(x, theta, pivot, &mut Silent)
}

/// QuickMark with instrumentation. With an auditing instrument every
/// recursion level checks admissibility on entry, the partition
/// postconditions, and on termination that the marked segment is a local
/// minimal solution; the first violation is returned as
/// [`MarkError::AdmissibilityViolation`].
pub fn quickmark_with<I: Instrument>(
    x: &IndicatorVector,
    theta: f64,
    pivot: PivotStrategy,
    probe: &mut I,
) -> Result<QuickMarkResult> {
    pivot.validate()?;
    let mut state = SelectionState::initial(x, theta)?;
    let values = x.as_slice();
    let mut chooser = PivotChooser::new(pivot);
    let mut first_violation: Option<String> = None;
    let mut report = |probe: &mut I, message: String| {
        if first_violation.is_none() {
            first_violation = Some(message.clone());
        }
        probe.violation(message);
    };

    let (n, x_star) = loop {
        let (lo, hi) = (state.lo, state.hi);
        if I::AUDIT {
            if let Err(e) = state.check_admissible(x) {
                report(probe, format!("on entry to {lo}..{hi}: {e}"));
            }
        }
        let spent_before = probe.comparisons();

        let p = chooser.choose(values, &state.perm, lo, hi, probe);
        let before = if I::AUDIT { Some(state.perm.clone()) } else { None };
        let part = partition_with(values, &mut state.perm, lo, hi, p, probe);
        if let Some(before) = before {
            if let Err(e) = check_partition(values, &before, &state.perm, lo, hi, &part) {
                report(probe, e);
            }
        }

        let sigma: CompensatedSum = state.perm[lo..part.greater_end]
            .iter()
            .map(|&i| values[i])
            .collect();
        let reached = state.consumed.merged(&sigma);
        let equal = part.equal_count();

        probe.compare(1);
        if reached.value() >= state.goal {
            probe.level(hi - lo, probe.comparisons() - spent_before);
            state.hi = part.greater_end;
            continue;
        }
        let through_equal = reached.with_copies(equal, part.pivot_value);
        probe.compare(1);
        if through_equal.value() >= state.goal {
            let m = copies_needed(&reached, part.pivot_value, equal, state.goal, probe);
            probe.level(hi - lo, probe.comparisons() - spent_before);
            let n = part.greater_end + m;
            if I::AUDIT {
                if let Err(e) = check_local_solution(x, &state, n, part.pivot_value) {
                    report(probe, e);
                }
            }
            break (n, part.pivot_value);
        }
        probe.level(hi - lo, probe.comparisons() - spent_before);
        if part.smaller_start == hi {
            // the goal is out of reach only through rounding; mark the whole segment
            break (hi, part.pivot_value);
        }
        state.consumed = through_equal;
        state.lo = part.smaller_start;
    };

    if let Some(message) = first_violation {
        return Err(MarkError::AdmissibilityViolation(message));
    }
    Ok(QuickMarkResult {
        perm: state.perm,
        n,
        x_star,
    })
}

/// Smallest `m` in `1..=available` with `reached + m·pivot ≥ goal`.
///
/// The float quotient only seeds the search; the answer is confirmed with
/// an exact product so rounding in the division cannot shift `n` by one.
pub(crate) fn copies_needed<I: Instrument>(
    reached: &CompensatedSum,
    pivot: f64,
    available: usize,
    goal: f64,
    probe: &mut I,
) -> usize {
    let estimate = ((goal - reached.value()) / pivot).ceil();
    let mut m = if estimate.is_finite() && estimate >= 1.0 {
        (estimate as usize).clamp(1, available)
    } else {
        1
    };
    loop {
        probe.compare(1);
        if m > 1 && reached.with_copies(m - 1, pivot).value() >= goal {
            m -= 1;
            continue;
        }
        probe.compare(1);
        if m < available && reached.with_copies(m, pivot).value() < goal {
            m += 1;
            continue;
        }
        return m;
    }
}

/// On termination `perm[lo..n]` must reach the residual goal and stop
/// reaching it once its smallest entry (the pivot) is dropped.
fn check_local_solution(
    x: &IndicatorVector,
    state: &SelectionState,
    n: usize,
    pivot_value: f64,
) -> std::result::Result<(), String> {
    let values = x.as_slice();
    let tol = x.criterion_tolerance();
    let marked: CompensatedSum = state.perm[state.lo..n].iter().map(|&i| values[i]).collect();
    let total = state.consumed.merged(&marked).value();
    let min_marked = state.perm[state.lo..n]
        .iter()
        .map(|&i| values[i])
        .fold(f64::INFINITY, f64::min);
    if min_marked != pivot_value {
        return Err(format!(
            "terminating pivot {pivot_value} is not the smallest marked value {min_marked}"
        ));
    }
    if total < state.goal - tol {
        return Err(format!("marked mass {total} misses goal {}", state.goal));
    }
    if total - min_marked >= state.goal + tol {
        return Err(format!(
            "marked set stays above goal {} without its smallest entry",
            state.goal
        ));
    }
    Ok(())
}
