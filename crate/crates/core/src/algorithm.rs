use std::fmt;
use std::str::FromStr;

use crate::binning::binning_mark_with;
use crate::decrement::{decrement_mark_with, SweepTermination};
use crate::error::{check_nu, check_theta, Result};
use crate::indicator::{mark_theta_one, IndicatorVector, MarkingOutcome};
use crate::instrument::{Instrument, Silent};
use crate::quickmark::{quickmark_with, xstar_mark_with, PivotStrategy};
use crate::sort_mark::sort_mark_with;

/// The marking strategies exposed by the library and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Full sort and prefix sums. Minimal, O(N log N).
    Sort,
    /// Linearly decreasing thresholds. O(N/ν), not quasi-minimal.
    Decrement,
    /// Geometric bins. Quasi-minimal, O(N + K).
    Binning,
    /// QuickMark with median pivots. Minimal, O(N).
    QuickMark,
    /// In-place threshold kernel plus a final scan. Minimal, O(N).
    XStar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Sort,
        Algorithm::Decrement,
        Algorithm::Binning,
        Algorithm::QuickMark,
        Algorithm::XStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sort => "sort",
            Algorithm::Decrement => "decrement",
            Algorithm::Binning => "binning",
            Algorithm::QuickMark => "quickmark",
            Algorithm::XStar => "xstar",
        }
    }

    /// Whether the algorithm returns a set of minimal cardinality.
    pub fn is_minimal(self) -> bool {
        matches!(self, Algorithm::Sort | Algorithm::QuickMark | Algorithm::XStar)
    }

    /// Whether [`mark`] reports the threshold `x*`.
    pub fn reports_threshold(self) -> bool {
        matches!(self, Algorithm::QuickMark | Algorithm::XStar)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm(pub String);

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown algorithm `{}` (expected sort, decrement, binning, quickmark or xstar)",
            self.0
        )
    }
}

impl std::error::Error for UnknownAlgorithm {}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

/// A marked set plus the threshold `x*` for the algorithms that compute it.
#[derive(Debug, Clone, PartialEq)]
pub struct Marked {
    pub outcome: MarkingOutcome,
    pub x_star: Option<f64>,
}

/// Runs `algorithm` with `0 < θ ≤ 1`; θ = 1 always takes the support
/// shortcut. `nu` is checked even for algorithms that ignore it.
pub fn mark(algorithm: Algorithm, x: &IndicatorVector, theta: f64, nu: f64) -> Result<Marked> {
    mark_with(algorithm, x, theta, nu, &mut Silent)
}

pub fn mark_with<I: Instrument>(
    algorithm: Algorithm,
    x: &IndicatorVector,
    theta: f64,
    nu: f64,
    probe: &mut I,
) -> Result<Marked> {
    check_theta(theta)?;
    check_nu(nu)?;
    if theta == 1.0 {
        let outcome = mark_theta_one(x);
        probe.compare(x.len() as u64);
        let x_star = algorithm
            .reports_threshold()
            .then(|| outcome.marked.iter().map(|&i| x[i]).fold(f64::INFINITY, f64::min));
        return Ok(Marked { outcome, x_star });
    }
    let marked = match algorithm {
        Algorithm::Sort => Marked {
            outcome: sort_mark_with(x, theta, probe)?,
            x_star: None,
        },
        Algorithm::Decrement => Marked {
            outcome: decrement_mark_with(x, theta, nu, SweepTermination::Immediate, probe)?,
            x_star: None,
        },
        Algorithm::Binning => Marked {
            outcome: binning_mark_with(x, theta, nu, probe)?,
            x_star: None,
        },
        Algorithm::QuickMark => {
            let result = quickmark_with(x, theta, PivotStrategy::Median, probe)?;
            Marked {
                outcome: result.outcome(x),
                x_star: Some(result.x_star),
            }
        }
        Algorithm::XStar => {
            let (outcome, x_star) = xstar_mark_with(x, theta, probe)?;
            Marked {
                outcome,
                x_star: Some(x_star),
            }
        }
    };
    Ok(marked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::satisfies_doerfler;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("QuickMark".parse::<Algorithm>().unwrap(), Algorithm::QuickMark);
        assert!("bogus".parse::<Algorithm>().is_err());
    }

    #[test]
    fn every_algorithm_on_the_small_example() {
        let x = IndicatorVector::new(vec![4.0, 1.0, 2.0, 3.0]).unwrap();
        for a in Algorithm::ALL {
            let m = mark(a, &x, 0.5, 0.5).unwrap();
            assert_eq!(m.outcome.marked, vec![0, 3], "{a}");
            assert!(satisfies_doerfler(&x, 0.5, &m.outcome.marked).unwrap());
            assert_eq!(m.x_star.is_some(), a.reports_threshold());
        }
    }

    #[test]
    fn theta_one_goes_to_the_support() {
        let x = IndicatorVector::new(vec![0.0, 0.0, 7.0, 0.0, 1.0]).unwrap();
        for a in Algorithm::ALL {
            assert_eq!(mark(a, &x, 1.0, 0.5).unwrap().outcome.marked, vec![2, 4]);
        }
        assert!(mark(Algorithm::Sort, &x, 1.5, 0.5).is_err());
        assert!(mark(Algorithm::Sort, &x, 0.5, 1.0).is_err());
    }
}
