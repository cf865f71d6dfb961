//! Indicator vectors, the Dörfler criterion and the θ = 1 fast path.
//!
//! Indicators are the summands of the criterion `θ·Σ_all x ≤ Σ_marked x`.
//! In adaptive finite elements these are usually squared local error
//! estimator contributions; this crate never squares its input.
//!
//! All indices are 0-based.

use crate::error::{check_nu, check_theta, MarkError, Result};
use crate::sum::{compensated_sum, CompensatedSum};

/// A nonnegative, finite, not-all-zero vector of refinement indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorVector {
    values: Vec<f64>,
}

impl IndicatorVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
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
        Ok(Self { values })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Compensated sum of all entries.
    pub fn total(&self) -> f64 {
        compensated_sum(self.values.iter().copied())
    }

    /// Sum of the entries at `indices`, in the given order.
    pub fn sum_over(&self, indices: &[usize]) -> Result<f64> {
        let mut acc = CompensatedSum::new();
        for &i in indices {
            acc.add(*self.values.get(i).ok_or(MarkError::IndexOutOfRange {
                index: i,
                len: self.len(),
            })?);
        }
        Ok(acc.value())
    }

    /// Absolute slack `4·N·ε·max(x)` used by [`satisfies_doerfler`].
    pub fn criterion_tolerance(&self) -> f64 {
        4.0 * self.len() as f64 * f64::EPSILON * self.max()
    }
}

impl std::ops::Index<usize> for IndicatorVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.values[index]
    }
}

impl TryFrom<Vec<f64>> for IndicatorVector {
    type Error = MarkError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// Marking parameters: bulk fraction `theta` and the threshold-reduction
/// factor `nu` used by the decrement and binning strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkingParams {
    pub theta: f64,
    pub nu: f64,
}

impl MarkingParams {
    pub const DEFAULT_NU: f64 = 0.5;

    pub fn new(theta: f64, nu: f64) -> Result<Self> {
        check_theta(theta)?;
        check_nu(nu)?;
        Ok(Self { theta, nu })
    }

    pub fn with_theta(theta: f64) -> Result<Self> {
        Self::new(theta, Self::DEFAULT_NU)
    }
}

/// A marked index set together with the indicator mass it carries.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkingOutcome {
    /// Distinct 0-based indices, ascending.
    pub marked: Vec<usize>,
    pub achieved_sum: f64,
}

impl MarkingOutcome {
    /// Builds an outcome from arbitrary-order distinct indices.
    pub(crate) fn from_indices(x: &IndicatorVector, mut marked: Vec<usize>) -> Self {
        marked.sort_unstable();
        debug_assert!(marked.windows(2).all(|w| w[0] < w[1]));
        let achieved_sum = compensated_sum(marked.iter().map(|&i| x[i]));
        Self {
            marked,
            achieved_sum,
        }
    }

    #[inline]
    pub fn cardinality(&self) -> usize {
        self.marked.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.marked.binary_search(&index).is_ok()
    }
}

/// `θ·Σ x_j`, the mass a marked set has to reach.
pub fn goal_value(x: &IndicatorVector, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(theta * x.total())
}

/// Verification predicate for the Dörfler criterion, with the absolute
/// slack of [`IndicatorVector::criterion_tolerance`].
///
/// Duplicate indices are counted once.
pub fn satisfies_doerfler(x: &IndicatorVector, theta: f64, marked: &[usize]) -> Result<bool> {
    let goal = goal_value(x, theta)?;
    let mut seen = vec![false; x.len()];
    let mut acc = CompensatedSum::new();
    for &i in marked {
        let slot = seen.get_mut(i).ok_or(MarkError::IndexOutOfRange {
            index: i,
            len: x.len(),
        })?;
        if !*slot {
            *slot = true;
            acc.add(x[i]);
        }
    }
    Ok(acc.value() >= goal - x.criterion_tolerance())
}

/// For θ = 1 the unique minimal set is the support of `x`.
pub fn mark_theta_one(x: &IndicatorVector) -> MarkingOutcome {
    let marked = (0..x.len()).filter(|&i| x[i] > 0.0).collect();
    MarkingOutcome::from_indices(x, marked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[f64]) -> IndicatorVector {
        IndicatorVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_invalid_vectors() {
        assert!(IndicatorVector::new(vec![]).is_err());
        assert!(IndicatorVector::new(vec![0.0, 0.0]).is_err());
        assert!(IndicatorVector::new(vec![1.0, -0.5]).is_err());
        assert!(IndicatorVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(IndicatorVector::new(vec![f64::INFINITY]).is_err());
        assert!(IndicatorVector::new(vec![0.0, 3.0]).is_ok());
    }

    #[test]
    fn goal_values() {
        assert_eq!(goal_value(&iv(&[4.0, 1.0, 2.0, 3.0]), 0.5).unwrap(), 5.0);
        assert_eq!(goal_value(&iv(&[1.0, 0.0, 0.0]), 0.9).unwrap(), 0.9);
        // 1 + 7·(1/7) + 6·(1/2) = 5
        let mut ce = vec![1.0];
        ce.extend(std::iter::repeat_n(1.0 / 7.0, 7));
        ce.extend(std::iter::repeat_n(0.5, 6));
        assert_eq!(goal_value(&iv(&ce), 0.5).unwrap(), 2.5);
    }

    #[test]
    fn goal_value_rejects_theta() {
        let x = iv(&[1.0]);
        assert!(goal_value(&x, 0.0).is_err());
        assert!(goal_value(&x, 1.5).is_err());
        assert!(goal_value(&x, f64::NAN).is_err());
        assert!(goal_value(&x, 1.0).is_ok());
    }

    #[test]
    fn criterion_examples() {
        let x = iv(&[4.0, 1.0, 2.0, 3.0]);
        assert!(satisfies_doerfler(&x, 0.5, &[0, 3]).unwrap());
        assert!(!satisfies_doerfler(&x, 0.5, &[0]).unwrap());
        assert!(satisfies_doerfler(&x, 0.99, &[0, 1, 2, 3]).unwrap());
        assert!(satisfies_doerfler(&x, 1.0, &[0, 1, 2, 3]).unwrap());
        assert_eq!(
            satisfies_doerfler(&x, 0.5, &[4]),
            Err(MarkError::IndexOutOfRange { index: 4, len: 4 })
        );
    }

    #[test]
    fn theta_one_is_support() {
        assert_eq!(mark_theta_one(&iv(&[1.0, 0.0, 2.0])).marked, vec![0, 2]);
        assert_eq!(mark_theta_one(&iv(&[5.0])).marked, vec![0]);
        assert_eq!(mark_theta_one(&iv(&[0.0, 0.0, 7.0, 0.0])).marked, vec![2]);
    }

    #[test]
    fn params_validate() {
        assert!(MarkingParams::new(1.0, 0.5).is_ok());
        assert!(MarkingParams::new(0.5, 1.0).is_err());
        assert!(MarkingParams::new(0.0, 0.5).is_err());
        assert_eq!(MarkingParams::with_theta(0.3).unwrap().nu, 0.5);
    }
}
