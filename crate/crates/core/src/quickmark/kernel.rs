use crate::error::{check_theta_open, MarkError, Result};
use crate::indicator::{goal_value, IndicatorVector, MarkingOutcome};
use crate::instrument::{Instrument, Silent};
use crate::sum::{compensated_sum, CompensatedSum};

use super::copies_needed;

/// Threshold `x*` computed on a caller-owned scratch copy of the
/// indicators, which is reordered in place.
///
/// Each step selects the median of the active range with
/// [`slice::select_nth_unstable_by`], which already leaves the range split
/// into `≥ pivot | pivot | ≤ pivot`, so no separate partition pass is
/// needed. Values equal to the pivot may sit on either side; the step
/// decisions only depend on the multiset of each side, so `x*` is the same
/// as with a three-way partition.
pub fn xstar_kernel(scratch: &mut [f64], theta: f64) -> Result<f64> {
    xstar_kernel_with(scratch, theta, &mut Silent)
}

pub fn xstar_kernel_with<I: Instrument>(
    scratch: &mut [f64],
    theta: f64,
    probe: &mut I,
) -> Result<f64> {
    check_theta_open(theta)?;
    validate_scratch(scratch)?;
    // summed in index order, so the goal matches `goal_value` bit for bit
    let goal = theta * compensated_sum(scratch.iter().copied());

    let (mut lo, mut hi) = (0, scratch.len());
    let mut consumed = CompensatedSum::new();
    loop {
        let len = hi - lo;
        let spent_before = probe.comparisons();
        if len == 1 {
            return Ok(scratch[lo]);
        }
        let mid = (len - 1) / 2;
        let segment = &mut scratch[lo..hi];
        segment.select_nth_unstable_by(mid, |a, b| {
            probe.compare(1);
            b.total_cmp(a)
        });
        let pivot = segment[mid];
        let above: CompensatedSum = segment[..mid].iter().copied().collect();
        let reached = consumed.merged(&above);

        probe.compare(1);
        if reached.value() >= goal {
            probe.level(len, probe.comparisons() - spent_before);
            hi = lo + mid;
            continue;
        }
        let with_pivot = reached.with_copies(1, pivot);
        probe.compare(1);
        if with_pivot.value() >= goal {
            probe.level(len, probe.comparisons() - spent_before);
            return Ok(pivot);
        }
        probe.level(len, probe.comparisons() - spent_before);
        consumed = with_pivot;
        lo += mid + 1;
        if lo == hi {
            // only reachable through rounding of the goal
            return Ok(pivot);
        }
    }
}

fn validate_scratch(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(MarkError::InvalidIndicator("vector is empty".into()));
    }
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
    {
        return Err(MarkError::InvalidIndicator(format!(
            "entry {i} is {v}, expected a finite nonnegative value"
        )));
    }
    if values.iter().all(|&v| v == 0.0) {
        return Err(MarkError::InvalidIndicator("all entries are zero".into()));
    }
    Ok(())
}

/// Marked set determined by the threshold: every entry above `x_star`
/// plus the fewest entries equal to it (lowest indices first) that reach
/// the goal.
pub fn set_from_threshold(x: &IndicatorVector, theta: f64, x_star: f64) -> Result<MarkingOutcome> {
    set_from_threshold_with(x, theta, x_star, &mut Silent)
}

fn set_from_threshold_with<I: Instrument>(
    x: &IndicatorVector,
    theta: f64,
    x_star: f64,
    probe: &mut I,
) -> Result<MarkingOutcome> {
    check_theta_open(theta)?;
    let goal = goal_value(x, theta)?;
    let mut above = CompensatedSum::new();
    let mut marked = Vec::new();
    let mut ties = Vec::new();
    for (j, &v) in x.as_slice().iter().enumerate() {
        probe.compare(1);
        if v > x_star {
            above.add(v);
            marked.push(j);
        } else {
            probe.compare(1);
            if v == x_star {
                ties.push(j);
            }
        }
    }
    if above.value() >= goal {
        return Err(MarkError::ThresholdInconsistent {
            x_star,
            reason: "entries above the threshold already reach the goal",
        });
    }
    if ties.is_empty() {
        return Err(MarkError::ThresholdInconsistent {
            x_star,
            reason: "no entry equals the threshold",
        });
    }
    let m = copies_needed(&above, x_star, ties.len(), goal, probe);
    if above.with_copies(m, x_star).value() < goal {
        return Err(MarkError::ThresholdInconsistent {
            x_star,
            reason: "entries at or above the threshold fall short of the goal",
        });
    }
    marked.extend_from_slice(&ties[..m]);
    Ok(MarkingOutcome::from_indices(x, marked))
}

/// Kernel on a fresh copy followed by [`set_from_threshold`]. Returns the
/// marked set and `x*`.
pub fn xstar_mark(x: &IndicatorVector, theta: f64) -> Result<(MarkingOutcome, f64)> {
    xstar_mark_with(x, theta, &mut Silent)
}

pub fn xstar_mark_with<I: Instrument>(
    x: &IndicatorVector,
    theta: f64,
    probe: &mut I,
) -> Result<(MarkingOutcome, f64)> {
    let mut scratch = x.as_slice().to_vec();
    let x_star = xstar_kernel_with(&mut scratch, theta, probe)?;
    let outcome = set_from_threshold_with(x, theta, x_star, probe)?;
    Ok((outcome, x_star))
}
