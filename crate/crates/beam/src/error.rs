use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeamError {
    #[error("{what} must be strictly positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("Rayleigh length {z_r} disagrees with pi w0^2 / lambda = {expected}")]
    RayleighMismatch { z_r: f64, expected: f64 },
    #[error("wavepacket too large for the second-order beam expansion: {what} = {value} exceeds {limit}")]
    OutsideExpansion { what: &'static str, value: f64, limit: f64 },
    #[error(transparent)]
    Coupling(#[from] e1m1_twolevel::TwoLevelError),
}

pub(crate) fn positive<T: e1m1_core::Real>(what: &'static str, value: T) -> Result<T, BeamError> {
    let v = value.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() && v > 0.0 {
        Ok(value)
    } else {
        Err(BeamError::NonPositive { what, value: v })
    }
}
