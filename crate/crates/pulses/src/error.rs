use e1m1_beam::BeamError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum PulseError {
    #[error(transparent)]
    Beam(#[from] BeamError),
    #[error("pulse Hamiltonian is not quasi-commuting over the pulse: diagnostic {value:.3e} exceeds {threshold:.3e}")]
    NotQuasiCommuting { value: f64, threshold: f64 },
    #[error("unsupported pulse kind `{0}`, expected `pi` or `pi2`")]
    UnsupportedKind(String),
    #[error("pulse area must be finite, got {0}")]
    InvalidArea(f64),
}
