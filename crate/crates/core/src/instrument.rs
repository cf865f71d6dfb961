//! Compile-time selectable instrumentation.
//!
//! Algorithms are generic over [`Instrument`]. With [`Silent`] every hook is
//! an empty inline function and the counting code disappears from the
//! timed build; [`Counting`] tallies element comparisons; [`Audited`]
//! additionally asks the algorithms to verify their internal invariants at
//! every step.

pub trait Instrument {
    /// When true, algorithms run their internal invariant checks.
    const AUDIT: bool = false;

    /// Records `n` element comparisons.
    #[inline]
    fn compare(&mut self, _n: u64) {}

    /// Total comparisons so far (0 when not counting).
    #[inline]
    fn comparisons(&self) -> u64 {
        0
    }

    /// Marks the end of one divide-and-conquer level over `len` elements
    /// that cost `spent` comparisons.
    #[inline]
    fn level(&mut self, _len: usize, _spent: u64) {}

    /// Records a failed invariant check.
    #[inline]
    fn violation(&mut self, _message: String) {}
}

/// No-op instrumentation used on the hot path.
#[derive(Debug, Default, Clone, Copy)]
pub struct Silent;

impl Instrument for Silent {}

/// Counts element comparisons and tracks the worst per-level cost ratio.
#[derive(Debug, Default, Clone)]
pub struct Counting {
    pub comparisons: u64,
    pub levels: u32,
    /// Largest `spent / len` seen over all levels.
    pub max_level_ratio: f64,
}

impl Counting {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Instrument for Counting {
    #[inline]
    fn compare(&mut self, n: u64) {
        self.comparisons += n;
    }

    #[inline]
    fn comparisons(&self) -> u64 {
        self.comparisons
    }

    fn level(&mut self, len: usize, spent: u64) {
        self.levels += 1;
        if len > 0 {
            self.max_level_ratio = self.max_level_ratio.max(spent as f64 / len as f64);
        }
    }
}

/// Counting plus invariant auditing.
#[derive(Debug, Default, Clone)]
pub struct Audited {
    pub counting: Counting,
    pub checks: u64,
    pub violations: Vec<String>,
}

impl Audited {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Instrument for Audited {
    const AUDIT: bool = true;

    #[inline]
    fn compare(&mut self, n: u64) {
        self.counting.compare(n);
    }

    #[inline]
    fn comparisons(&self) -> u64 {
        self.counting.comparisons
    }

    fn level(&mut self, len: usize, spent: u64) {
        self.counting.level(len, spent);
        self.checks += 1;
    }

    fn violation(&mut self, message: String) {
        self.violations.push(message);
    }
}
