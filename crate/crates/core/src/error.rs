use thiserror::Error;

/// Errors raised by the marking algorithms and their oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MarkError {
    #[error("invalid indicator vector: {0}")]
    InvalidIndicator(String),

    #[error("parameter `{name}` out of range: {value} (expected {expected})")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("pivot position {pivot} outside segment {lo}..{hi}")]
    PivotOutOfRange { pivot: usize, lo: usize, hi: usize },

    #[error("instance too large for exhaustive search: N = {len} (limit {limit})")]
    InstanceTooLarge { len: usize, limit: usize },

    #[error("threshold {x_star} is inconsistent with the indicator vector: {reason}")]
    ThresholdInconsistent { x_star: f64, reason: &'static str },

    #[error("admissibility violation: {0}")]
    AdmissibilityViolation(String),
}

pub type Result<T> = std::result::Result<T, MarkError>;

pub(crate) fn check_theta_open(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(MarkError::ParameterOutOfRange {
            name: "theta",
            value: theta,
            expected: "0 < theta < 1",
        })
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(())
    } else {
        Err(MarkError::ParameterOutOfRange {
            name: "theta",
            value: theta,
            expected: "0 < theta <= 1",
        })
    }
}

pub(crate) fn check_nu(nu: f64) -> Result<()> {
    if nu > 0.0 && nu < 1.0 {
        Ok(())
    } else {
        Err(MarkError::ParameterOutOfRange {
            name: "nu",
            value: nu,
            expected: "0 < nu < 1",
        })
    }
}
