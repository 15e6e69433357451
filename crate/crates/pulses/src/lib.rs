//! Pulse Hamiltonian of a single E1-M1 pulse after the frame
//! transformations, the commutator test that justifies dropping time
//! ordering, the resulting evolution operator, and the generalized pi and
//! pi/2 pulse operators expressed through canonical unitaries.

mod error;
mod evolution;
mod hamiltonian;
mod pulse;
pub mod weyl;

pub use error::PulseError;
pub use evolution::{evolve_u3, evolve_u3_checked, time_integrals, CommutatorPolicy, U3Exponent};
pub use hamiltonian::{
    assemble_h3, commutator_diagnostic, quadratic_form_at, quadratic_form_series, window_diagnostic,
    CommutatorDiagnostic, PauliCoefficientField,
};
pub use pulse::{generalized_pulse, splitting_ratio, PulseKind, PulseOperatorBranches, PulseOptions};
