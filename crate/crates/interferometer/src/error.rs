use e1m1_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InterferometerError {
    #[error("timing violation: {0}")]
    Timing(String),
    #[error("pulse coefficients use mass {pulse} but the species mean mass is {species}")]
    MassMismatch { pulse: f64, species: f64 },
    #[error("pulse coefficients use hbar {pulse} but the species carries {species}")]
    HbarMismatch { pulse: f64, species: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
