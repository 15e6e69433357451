//! Reduction of the three-level E1-M1 system to an effective two-level
//! system and the resulting plane-wave Rabi dynamics.
//!
//! The ancilla amplitude is slaved to the clock pair through a quasi
//! projector `psi_a = Pi psi`, expanded in powers of the inverse single
//! photon detuning. The rotating-wave approximation is applied only after
//! the elimination, so counter-rotating amplitudes that pair up into
//! non-rotating products survive.

mod adiabatic;
mod error;
mod optable;
mod projector;
mod rabi;

pub use adiabatic::{adiabaticity, check_adiabatic, Adiabaticity, Kinematics};
pub use error::TwoLevelError;
pub use optable::{Monomial, OpTable};
pub use projector::{bloch_residual, coupling_column, effective_operator, projector_expansion, ProjectorTerm, TestState};
pub use rabi::{effective_hamiltonian, rabi_populations, two_photon_rabi, EffectiveTwoLevel};

/// Double precision effective two-level parameters.
pub type TwoLevel = EffectiveTwoLevel<f64>;
