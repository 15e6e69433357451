use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoLevelError {
    #[error("single-photon detuning is zero; the ancilla cannot be eliminated")]
    SingularDetuning,
    #[error("coupling set is not Doppler free; use the position dependent pulse path")]
    NotDopplerFree,
    #[error("adiabaticity parameter {name} = {value} exceeds 0.2")]
    NotAdiabatic { name: &'static str, value: f64 },
    #[error("projector expansion order {0} is above the supported maximum of 3")]
    OrderTooHigh(usize),
    #[error("{what} must be non-negative, got {value}")]
    Negative { what: &'static str, value: f64 },
}
