//! Pivot strategies and worst-case linear selection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MarkError, Result};
use crate::indicator::IndicatorVector;
use crate::instrument::{Instrument, Silent};

/// How QuickMark picks the pivot of a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
#[derive(Default)]
pub enum PivotStrategy {
    /// Exact median via median-of-medians selection. Worst-case linear.
    #[default]
    Median,
    /// Uniformly random position from a seeded ChaCha8 stream. Linear on
    /// average, quadratic in the worst case.
    Random { seed: u64 },
    /// Exact `q`-quantile (ascending rank `⌊q·(m−1)⌋`), `0 < q < 1`.
    Quantile(f64),
}

impl PivotStrategy {
    pub fn quantile(q: f64) -> Result<Self> {
        if q > 0.0 && q < 1.0 {
            Ok(Self::Quantile(q))
        } else {
            Err(MarkError::ParameterOutOfRange {
                name: "q",
                value: q,
                expected: "0 < q < 1",
            })
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            Self::Quantile(q) => Self::quantile(q).map(|_| ()),
            _ => Ok(()),
        }
    }
}


/// Per-run pivot state: the RNG stream and a reusable scratch buffer.
pub(crate) struct PivotChooser {
    strategy: PivotStrategy,
    rng: Option<ChaCha8Rng>,
    scratch: Vec<f64>,
}

impl PivotChooser {
    pub(crate) fn new(strategy: PivotStrategy) -> Self {
        let rng = match strategy {
            PivotStrategy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Self {
            strategy,
            rng,
            scratch: Vec::new(),
        }
    }

    /// Position in `lo..hi` of the pivot for `perm[lo..hi]`.
    pub(crate) fn choose<I: Instrument>(
        &mut self,
        values: &[f64],
        perm: &[usize],
        lo: usize,
        hi: usize,
        probe: &mut I,
    ) -> usize {
        let len = hi - lo;
        match self.strategy {
            PivotStrategy::Random { .. } => {
                let rng = self.rng.as_mut().expect("random strategy owns an rng");
                rng.gen_range(lo..hi)
            }
            PivotStrategy::Median => {
                self.rank_position(values, perm, lo, hi, (len - 1) / 2, probe)
            }
            PivotStrategy::Quantile(q) => {
                let rank = ((q * (len - 1) as f64).floor() as usize).min(len - 1);
                self.rank_position(values, perm, lo, hi, rank, probe)
            }
        }
    }

    fn rank_position<I: Instrument>(
        &mut self,
        values: &[f64],
        perm: &[usize],
        lo: usize,
        hi: usize,
        rank: usize,
        probe: &mut I,
    ) -> usize {
        self.scratch.clear();
        self.scratch.extend(perm[lo..hi].iter().map(|&i| values[i]));
        let target = select_nth_smallest(&mut self.scratch, rank, probe);
        position_of(values, perm, lo, hi, target, probe)
    }
}

fn position_of<I: Instrument>(
    values: &[f64],
    perm: &[usize],
    lo: usize,
    hi: usize,
    target: f64,
    probe: &mut I,
) -> usize {
    for (offset, &i) in perm[lo..hi].iter().enumerate() {
        probe.compare(1);
        if values[i] == target {
            return lo + offset;
        }
    }
    unreachable!("selected value comes from the segment")
}

/// Position `p` in `lo..hi` whose value is a median of `perm[lo..hi]`:
/// at most half of the segment is strictly smaller and at most half is
/// strictly greater. Does not reorder `perm`.
pub fn pivot_median(x: &IndicatorVector, perm: &[usize], lo: usize, hi: usize) -> Result<usize> {
    if lo >= hi || hi > perm.len() {
        return Err(MarkError::IndexOutOfRange {
            index: hi,
            len: perm.len(),
        });
    }
    if let Some(&bad) = perm[lo..hi].iter().find(|&&i| i >= x.len()) {
        return Err(MarkError::IndexOutOfRange {
            index: bad,
            len: x.len(),
        });
    }
    let mut chooser = PivotChooser::new(PivotStrategy::Median);
    Ok(chooser.choose(x.as_slice(), perm, lo, hi, &mut Silent))
}

/// The `k`-th smallest (0-based) value of `values`, by median-of-medians
/// selection with groups of five. Reorders `values`.
///
/// Equal keys are split off with a three-way partition, so long runs of
/// duplicates do not degrade the linear bound.
pub fn select_nth_smallest<I: Instrument>(values: &mut [f64], mut k: usize, probe: &mut I) -> f64 {
    assert!(k < values.len(), "rank {k} out of range");
    let (mut lo, mut hi) = (0, values.len());
    loop {
        let seg = &mut values[lo..hi];
        if seg.len() <= 5 {
            insertion_sort(seg, probe);
            return seg[k];
        }
        let pivot = median_of_medians(seg, probe);
        let (less, not_greater) = partition_ascending(seg, pivot, probe);
        if k < less {
            hi = lo + less;
        } else if k < not_greater {
            return pivot;
        } else {
            k -= not_greater;
            lo += not_greater;
        }
    }
}

fn median_of_medians<I: Instrument>(seg: &mut [f64], probe: &mut I) -> f64 {
    let len = seg.len();
    let groups = len.div_ceil(5);
    for g in 0..groups {
        let start = g * 5;
        let end = (start + 5).min(len);
        insertion_sort(&mut seg[start..end], probe);
        // groups before this one are finished, so slot g is free to reuse
        seg.swap(g, start + (end - start - 1) / 2);
    }
    select_nth_smallest(&mut seg[..groups], (groups - 1) / 2, probe)
}

fn insertion_sort<I: Instrument>(seg: &mut [f64], probe: &mut I) {
    for i in 1..seg.len() {
        let mut j = i;
        while j > 0 {
            probe.compare(1);
            if seg[j - 1] > seg[j] {
                seg.swap(j - 1, j);
                j -= 1;
            } else {
                break;
            }
        }
    }
}

/// Three-way partition into `< pivot | == pivot | > pivot`; returns the
/// start of the equal block and the start of the greater block.
fn partition_ascending<I: Instrument>(seg: &mut [f64], pivot: f64, probe: &mut I) -> (usize, usize) {
    let (mut lt, mut i, mut gt) = (0, 0, seg.len());
    while i < gt {
        probe.compare(1);
        if seg[i] < pivot {
            seg.swap(lt, i);
            lt += 1;
            i += 1;
        } else {
            probe.compare(1);
            if seg[i] > pivot {
                gt -= 1;
                seg.swap(i, gt);
            } else {
                i += 1;
            }
        }
    }
    (lt, gt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::Counting;
    use proptest::prelude::*;

    fn counts(values: &[f64], target: f64) -> (usize, usize) {
        let smaller = values.iter().filter(|&&v| v < target).count();
        let greater = values.iter().filter(|&&v| v > target).count();
        (smaller, greater)
    }

    #[test]
    fn median_of_three() {
        let x = IndicatorVector::new(vec![7.0, 1.0, 4.0]).unwrap();
        let p = pivot_median(&x, &[0, 1, 2], 0, 3).unwrap();
        assert_eq!(x[p], 4.0);
    }

    #[test]
    fn median_of_equal_values() {
        let x = IndicatorVector::new(vec![5.0; 4]).unwrap();
        let p = pivot_median(&x, &[0, 1, 2, 3], 0, 4).unwrap();
        assert_eq!(x[p], 5.0);
    }

    #[test]
    fn median_of_twenty_five_distinct() {
        let values: Vec<f64> = (0..25).map(|i| ((i * 7) % 25) as f64 + 0.5).collect();
        let x = IndicatorVector::new(values.clone()).unwrap();
        let perm: Vec<usize> = (0..25).collect();
        let p = pivot_median(&x, &perm, 0, 25).unwrap();
        let (smaller, greater) = counts(&values, x[p]);
        assert!(smaller as f64 <= 12.5 && greater as f64 <= 12.5);
        assert_eq!(x[p], 12.5);
    }

    #[test]
    fn median_respects_segment_bounds() {
        let x = IndicatorVector::new(vec![100.0, 3.0, 1.0, 2.0, 0.0]).unwrap();
        let perm = [0, 1, 2, 3, 4];
        let p = pivot_median(&x, &perm, 1, 4).unwrap();
        assert_eq!(p, 3);
        assert!(pivot_median(&x, &perm, 2, 2).is_err());
        assert!(pivot_median(&x, &perm, 0, 6).is_err());
    }

    #[test]
    fn quantile_must_be_inside_unit_interval() {
        assert!(PivotStrategy::quantile(0.0).is_err());
        assert!(PivotStrategy::quantile(1.0).is_err());
        assert!(PivotStrategy::quantile(0.3).is_ok());
    }

    #[test]
    fn selection_is_linear_on_duplicates() {
        let mut values = vec![1.0; 100_000];
        let mut probe = Counting::new();
        assert_eq!(select_nth_smallest(&mut values, 50_000, &mut probe), 1.0);
        assert!(probe.comparisons < 20 * 100_000);
    }

    proptest! {
        #[test]
        fn select_matches_sort(values in prop::collection::vec(0u8..20, 1..300), k_seed in any::<usize>()) {
            let mut v: Vec<f64> = values.iter().map(|&b| b as f64).collect();
            let k = k_seed % v.len();
            let mut sorted = v.clone();
            sorted.sort_by(f64::total_cmp);
            prop_assert_eq!(select_nth_smallest(&mut v, k, &mut Silent), sorted[k]);
        }

        #[test]
        fn median_meets_count_bounds(values in prop::collection::vec(0.0f64..1.0, 1..400)) {
            let x = IndicatorVector::new(values.iter().map(|v| v + 0.001).collect()).unwrap();
            let perm: Vec<usize> = (0..x.len()).collect();
            let p = pivot_median(&x, &perm, 0, x.len()).unwrap();
            let (smaller, greater) = counts(x.as_slice(), x[p]);
            let half = x.len() as f64 / 2.0;
            prop_assert!(smaller as f64 <= half && greater as f64 <= half);
        }
    }
}
