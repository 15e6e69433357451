use thiserror::Error;

/// Validation failures raised while constructing core parameter types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("{what} must be strictly positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },
    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: f64 },
    #[error("mass defect ratio {epsilon} is not small (|epsilon| must stay below 0.1)")]
    EpsilonTooLarge { epsilon: f64 },
    #[error("mass defect and clock frequency disagree: dM c^2 = {rest_energy}, hbar omega = {photon_energy}")]
    ClockMismatch { rest_energy: f64, photon_energy: f64 },
    #[error("unit system is missing its {0} scale")]
    MissingScale(&'static str),
}

pub(crate) fn positive<T: crate::Real>(what: &'static str, value: T) -> Result<T, CoreError> {
    let v = value.to_f64().unwrap_or(f64::NAN);
    if !v.is_finite() {
        return Err(CoreError::NonFinite { what, value: v });
    }
    if v <= 0.0 {
        return Err(CoreError::NonPositive { what, value: v });
    }
    Ok(value)
}

pub(crate) fn finite<T: crate::Real>(what: &'static str, value: T) -> Result<T, CoreError> {
    let v = value.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() {
        Ok(value)
    } else {
        Err(CoreError::NonFinite { what, value: v })
    }
}
