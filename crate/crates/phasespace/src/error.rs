use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseSpaceError {
    /// The requested operator needs a generator outside `{1, Z, P, P^2}`.
    #[error("operator needs the generator {generator}, which the canonical algebra does not contain; use the grid propagator instead")]
    NotRepresentable { generator: &'static str },
    #[error("hbar mismatch between composed operators ({left} vs {right})")]
    HbarMismatch { left: f64, right: f64 },
}
