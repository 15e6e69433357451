use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolarizationError {
    #[error("level {label}: |M| = {m} exceeds J = {j}")]
    MagneticNumber { label: String, m: i32, j: u32 },
    #[error("level {label}: J = {j} cannot be formed from L = {l} and S = {s}")]
    AngularMomentum { label: String, l: u32, s: u32, j: u32 },
    #[error("matrix element between {bra} and {ket} needs |dM| <= 1, got {delta_m}")]
    DeltaM { bra: String, ket: String, delta_m: i32 },
    #[error("expected exactly two field components, got {0}")]
    ComponentCount(usize),
    #[error("both field components propagate along {0}; the scheme needs a counter-propagating pair")]
    CoPropagating(&'static str),
    #[error("field components have different frequencies ({0} vs {1})")]
    FrequencyMismatch(f64, f64),
    #[error("{what} must be strictly positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
}
