//! Compensated floating-point accumulation.
//!
//! Every "does this set reach the goal" decision in the crate compares a
//! [`CompensatedSum`] against the same goal value, so algorithms that visit
//! the same multiset of indicators in different orders agree on the outcome.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub const fn new() -> Self {
        Self {
            sum: 0.0,
            compensation: 0.0,
        }
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Adds `count` copies of `value`, using an error-free product so the
    /// result matches adding the copies one by one to within the
    /// accumulator's own rounding.
    #[inline]
    pub fn add_copies(&mut self, count: usize, value: f64) {
        let m = count as f64;
        let product = m * value;
        let error = m.mul_add(value, -product);
        self.add(product);
        self.add(error);
    }

    /// Folds another accumulator into this one.
    #[inline]
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    #[must_use]
    pub fn merged(mut self, other: &CompensatedSum) -> Self {
        self.merge(other);
        self
    }

    #[must_use]
    pub fn with_copies(mut self, count: usize, value: f64) -> Self {
        self.add_copies(count, value);
        self
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<T: IntoIterator<Item = f64>>(&mut self, iter: T) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<T: IntoIterator<Item = f64>>(iter: T) -> Self {
        let mut acc = CompensatedSum::new();
        acc.extend(iter);
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}
