use crate::error::{MarkError, Result};
use crate::indicator::IndicatorVector;
use crate::instrument::{Instrument, Silent};

/// Result of a three-way partition of `perm[lo..hi]` around a pivot value,
/// in descending order:
///
/// * `perm[lo..greater_end]` holds values strictly greater than the pivot,
/// * `perm[greater_end..smaller_start]` values equal to it (never empty),
/// * `perm[smaller_start..hi]` values strictly smaller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionOutcome {
    pub greater_end: usize,
    pub smaller_start: usize,
    pub pivot_value: f64,
}

impl PartitionOutcome {
    pub fn equal_count(&self) -> usize {
        self.smaller_start - self.greater_end
    }
}

/// Reorders `perm[lo..hi]` around the value at position `pivot`; entries
/// outside the segment are untouched.
pub fn partition(
    x: &IndicatorVector,
    perm: &mut [usize],
    lo: usize,
    hi: usize,
    pivot: usize,
) -> Result<PartitionOutcome> {
    if !(lo <= pivot && pivot < hi && hi <= perm.len()) {
        return Err(MarkError::PivotOutOfRange { pivot, lo, hi });
    }
    if let Some(&bad) = perm[lo..hi].iter().find(|&&i| i >= x.len()) {
        return Err(MarkError::IndexOutOfRange {
            index: bad,
            len: x.len(),
        });
    }
    Ok(partition_with(x.as_slice(), perm, lo, hi, pivot, &mut Silent))
}

/// Dutch national flag pass; at most two comparisons per element.
pub(crate) fn partition_with<I: Instrument>(
    values: &[f64],
    perm: &mut [usize],
    lo: usize,
    hi: usize,
    pivot: usize,
    probe: &mut I,
) -> PartitionOutcome {
    let pivot_value = values[perm[pivot]];
    let (mut gt, mut i, mut lt) = (lo, lo, hi);
    while i < lt {
        let v = values[perm[i]];
        probe.compare(1);
        if v > pivot_value {
            perm.swap(gt, i);
            gt += 1;
            i += 1;
        } else {
            probe.compare(1);
            if v < pivot_value {
                lt -= 1;
                perm.swap(i, lt);
            } else {
                i += 1;
            }
        }
    }
    PartitionOutcome {
        greater_end: gt,
        smaller_start: lt,
        pivot_value,
    }
}

/// Checks the three ordering postconditions and that `after` agrees with
/// `before` outside the segment and is a rearrangement inside it.
pub(crate) fn check_partition(
    values: &[f64],
    before: &[usize],
    after: &[usize],
    lo: usize,
    hi: usize,
    out: &PartitionOutcome,
) -> std::result::Result<(), String> {
    let p = out.pivot_value;
    if !(lo <= out.greater_end && out.greater_end < out.smaller_start && out.smaller_start <= hi) {
        return Err(format!(
            "partition bounds lo={lo} g_end={} s_start={} hi={hi}",
            out.greater_end, out.smaller_start
        ));
    }
    if let Some(j) = (lo..out.greater_end).find(|&j| values[after[j]] <= p) {
        return Err(format!("position {j} in the greater block is not > pivot {p}"));
    }
    if let Some(j) = (out.greater_end..out.smaller_start).find(|&j| values[after[j]] != p) {
        return Err(format!("position {j} in the equal block differs from pivot {p}"));
    }
    if let Some(j) = (out.smaller_start..hi).find(|&j| values[after[j]] >= p) {
        return Err(format!("position {j} in the smaller block is not < pivot {p}"));
    }
    if before[..lo] != after[..lo] || before[hi..] != after[hi..] {
        return Err("partition touched entries outside its segment".into());
    }
    let mut a = before[lo..hi].to_vec();
    let mut b = after[lo..hi].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err("partition is not a rearrangement of its segment".into());
    }
    Ok(())
}
