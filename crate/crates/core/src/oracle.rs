//! Independent verification: N_min oracles, the minimal-set predicate and
//! the counterexample family for decrement marking.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{check_nu, check_theta_open, MarkError, Result};
use crate::indicator::{goal_value, IndicatorVector};
use crate::sort_mark::sort_mark;
use crate::sum::CompensatedSum;

/// Largest N accepted by [`nmin_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// `N_min` as the cardinality of the sort-based minimal set.
pub fn nmin_oracle(x: &IndicatorVector, theta: f64) -> Result<usize> {
    Ok(sort_mark(x, theta)?.cardinality())
}

/// `N_min` by brute force over all subsets, by increasing size.
///
/// Shares no code with the marking algorithms apart from the goal value
/// and the summation primitive.
pub fn nmin_exhaustive(x: &IndicatorVector, theta: f64) -> Result<usize> {
    check_theta_open(theta)?;
    let n = x.len();
    if n > EXHAUSTIVE_LIMIT {
        return Err(MarkError::InstanceTooLarge {
            len: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let goal = goal_value(x, theta)?;
    let full: u32 = (1u32 << n) - 1;
    for size in 1..=n {
        // Gosper's hack: every mask with `size` bits set, in increasing order
        let mut mask: u32 = (1u32 << size) - 1;
        while mask <= full {
            let sum: CompensatedSum = (0..n)
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| x[j])
                .collect();
            if sum.value() >= goal {
                return Ok(size);
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            if r > full || r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    // the full set always reaches θ·Σx for θ < 1
    Ok(n)
}

/// Whether the positions `candidate` of `perm[lo..hi]` form a minimal set
/// for the goal `v` inside that segment:
///
/// * every candidate value is at least every other value of the segment,
/// * the candidate mass reaches `v`, and drops below it when any one
///   candidate is removed.
///
/// Positions are 0-based and `lo..hi` is half-open. Removing the smallest
/// candidate leaves the largest remainder, so checking that one removal
/// decides the second condition. Both mass comparisons carry the slack of
/// [`IndicatorVector::criterion_tolerance`].
pub fn is_valid_minimal_set(
    x: &IndicatorVector,
    perm: &[usize],
    lo: usize,
    hi: usize,
    v: f64,
    candidate: &[usize],
) -> Result<bool> {
    if lo > hi || hi > perm.len() {
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
    let mut chosen = vec![false; hi - lo];
    for &p in candidate {
        if !(lo..hi).contains(&p) {
            return Err(MarkError::IndexOutOfRange { index: p, len: hi });
        }
        if std::mem::replace(&mut chosen[p - lo], true) {
            return Ok(false);
        }
    }
    if candidate.is_empty() {
        return Ok(v <= 0.0);
    }

    let value = |p: usize| x[perm[p]];
    let smallest_in = candidate
        .iter()
        .map(|&p| value(p))
        .fold(f64::INFINITY, f64::min);
    let largest_out = (lo..hi)
        .filter(|&p| !chosen[p - lo])
        .map(value)
        .fold(f64::NEG_INFINITY, f64::max);
    if largest_out > smallest_in {
        return Ok(false);
    }

    let tol = x.criterion_tolerance();
    let total: CompensatedSum = candidate.iter().map(|&p| value(p)).collect();
    let without_smallest = total.with_copies(1, -smallest_in);
    Ok(total.value() >= v - tol && without_smallest.value() < v + tol)
}

/// Parameters of the instance `(1, ε × CR, δ × (R−1))` on which decrement
/// marking returns more than `C·N_min` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleSpec {
    pub c: usize,
    pub theta: f64,
    pub nu: f64,
    pub delta: BigRational,
    pub epsilon: BigRational,
    pub r: usize,
    pub n: usize,
}

impl CounterexampleSpec {
    /// Derives δ, ε and R in exact rational arithmetic from the binary
    /// values of `theta` and `nu`.
    pub fn new(c: usize, theta: f64, nu: f64) -> Result<Self> {
        check_theta_open(theta)?;
        check_nu(nu)?;
        if c == 0 {
            return Err(MarkError::ParameterOutOfRange {
                name: "C",
                value: 0.0,
                expected: "C >= 1",
            });
        }
        let one = BigRational::one();
        let th = exact(theta);
        let nu_q = exact(nu);

        let sweeps = (&one / &nu_q).ceil();
        let last_step = &one - &nu_q * (&sweeps - &one);
        let delta = &one / (&one / &last_step).ceil();
        let a = ((BigRational::from_integer(2.into()) - &th) / &th).ceil();
        let r_q = &a / &delta + &one;
        let r = to_usize(&r_q)?;
        let cr = BigRational::from_integer(BigInt::from(c * r));
        let bound = (&one - &th) * (&one + &a) / &th;
        let epsilon = (&one / &cr) * if bound < one { bound } else { one.clone() };

        Ok(Self {
            c,
            theta,
            nu,
            delta,
            epsilon,
            r,
            n: (c + 1) * r,
        })
    }

    /// `0 < ε < δ ≤ 1 − ν(⌈1/ν⌉−1)`, evaluated exactly.
    pub fn inequalities_hold(&self) -> bool {
        let one = BigRational::one();
        let nu_q = exact(self.nu);
        let last_step = &one - &nu_q * ((&one / &nu_q).ceil() - &one);
        self.epsilon > BigRational::zero() && self.epsilon < self.delta && self.delta <= last_step
    }

    /// The instance vector; rationals are rounded to the nearest double
    /// only here.
    pub fn vector(&self) -> IndicatorVector {
        let eps = self.epsilon.to_f64().unwrap_or(0.0);
        let delta = self.delta.to_f64().unwrap_or(0.0);
        let mut values = Vec::with_capacity(self.n);
        values.push(1.0);
        values.extend(std::iter::repeat_n(eps, self.c * self.r));
        values.extend(std::iter::repeat_n(delta, self.r - 1));
        IndicatorVector::new(values).expect("entries are positive and finite")
    }
}

/// Counterexample instance for the given factor `c` and parameters.
pub fn gen_counterexample(c: usize, theta: f64, nu: f64) -> Result<(IndicatorVector, CounterexampleSpec)> {
    let spec = CounterexampleSpec::new(c, theta, nu)?;
    Ok((spec.vector(), spec))
}

fn exact(value: f64) -> BigRational {
    BigRational::from_float(value).expect("finite parameter")
}

fn to_usize(q: &BigRational) -> Result<usize> {
    q.to_integer()
        .to_usize()
        .filter(|_| q.is_integer())
        .ok_or(MarkError::ParameterOutOfRange {
            name: "R",
            value: q.to_f64().unwrap_or(f64::NAN),
            expected: "a representable integer",
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decrement::decrement_mark;
    use proptest::prelude::*;

    fn iv(v: &[f64]) -> IndicatorVector {
        IndicatorVector::new(v.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(nmin_oracle(&iv(&[4.0, 1.0, 2.0, 3.0]), 0.5).unwrap(), 2);
        assert_eq!(nmin_oracle(&iv(&[1.0, 0.0, 0.0]), 0.99).unwrap(), 1);
        assert_eq!(nmin_exhaustive(&iv(&[4.0, 1.0, 2.0, 3.0]), 0.5).unwrap(), 2);
        assert_eq!(nmin_exhaustive(&iv(&[1.0, 1.0]), 0.6).unwrap(), 2);
        assert_eq!(nmin_exhaustive(&iv(&[5.0, 5.0]), 0.5).unwrap(), 1);
        assert!(matches!(
            nmin_exhaustive(&iv(&[1.0; 21]), 0.5),
            Err(MarkError::InstanceTooLarge { len: 21, .. })
        ));
    }

    #[test]
    fn exhaustive_handles_the_limit() {
        let x = iv(&(1..=20).map(|i| i as f64).collect::<Vec<_>>());
        // 20+19+…+12 = 144 ≥ 0.69·210 = 144.9 fails, one more reaches it
        assert_eq!(nmin_exhaustive(&x, 0.69).unwrap(), 10);
        assert_eq!(nmin_oracle(&x, 0.69).unwrap(), 10);
    }

    #[test]
    fn minimal_set_predicate() {
        let x = iv(&[4.0, 1.0, 2.0, 3.0]);
        let perm = [0, 1, 2, 3];
        assert!(is_valid_minimal_set(&x, &perm, 0, 4, 5.0, &[0, 3]).unwrap());
        assert!(!is_valid_minimal_set(&x, &perm, 0, 4, 5.0, &[0, 2, 3]).unwrap());
        assert!(!is_valid_minimal_set(&x, &perm, 0, 4, 5.0, &[1, 2]).unwrap());
        assert!(!is_valid_minimal_set(&x, &perm, 0, 4, 5.0, &[0]).unwrap());
        assert!(is_valid_minimal_set(&x, &perm, 0, 4, 5.0, &[0, 4]).is_err());
        // inside a sub-segment only the segment competes
        assert!(is_valid_minimal_set(&x, &perm, 1, 3, 1.5, &[2]).unwrap());
    }

    #[test]
    fn counterexample_for_one_half() {
        let (x, spec) = gen_counterexample(1, 0.5, 0.5).unwrap();
        assert_eq!(spec.delta, q(1, 2));
        assert_eq!(spec.epsilon, q(1, 7));
        assert_eq!((spec.r, spec.n), (7, 14));
        assert!(spec.inequalities_hold());
        assert_eq!(x.len(), 14);
        assert_eq!(goal_value(&x, 0.5).unwrap(), 2.5);
        assert_eq!(nmin_oracle(&x, 0.5).unwrap(), 4);
        assert_eq!(decrement_mark(&x, 0.5, 0.5).unwrap().cardinality(), 9);
    }

    #[test]
    fn counterexample_family_beats_the_factor() {
        for c in 1..=3 {
            let (x, spec) = gen_counterexample(c, 0.5, 0.5).unwrap();
            assert!(spec.inequalities_hold());
            let marked = decrement_mark(&x, 0.5, 0.5).unwrap().cardinality();
            let nmin = nmin_oracle(&x, 0.5).unwrap();
            assert!(marked >= c * spec.r + 2, "C={c}: #M={marked}");
            assert!(marked > c * nmin);
        }
    }

    #[test]
    fn counterexample_parameters_elsewhere() {
        for (theta, nu) in [(0.25, 0.3), (0.75, 0.7), (0.1, 0.5), (0.9, 0.25)] {
            for c in 1..=3 {
                let spec = CounterexampleSpec::new(c, theta, nu).unwrap();
                assert!(spec.inequalities_hold(), "θ={theta} ν={nu} C={c}");
                assert_eq!(spec.n, (c + 1) * spec.r);
            }
        }
        assert!(CounterexampleSpec::new(0, 0.5, 0.5).is_err());
        assert!(CounterexampleSpec::new(1, 1.0, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn exhaustive_matches_sort(
            values in prop::collection::vec(0.0f64..1.0, 1..12),
            theta in 0.01f64..0.99,
        ) {
            prop_assume!(values.iter().any(|&v| v > 0.0));
            let x = iv(&values);
            prop_assert_eq!(nmin_exhaustive(&x, theta).unwrap(), nmin_oracle(&x, theta).unwrap());
        }
    }
}
