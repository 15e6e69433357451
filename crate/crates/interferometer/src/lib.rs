//! Quantum-clock interferometers assembled from canonical unitaries: the
//! superposition scheme (A) with its differential and double-differential
//! phases, the scheme without superpositions (B), and an internal-state
//! Mach-Zehnder used to compare multi-path signals with the grid.
//!
//! Phases follow `delta_phi = arg <psi| U_upper^dagger U_lower |psi>`.

mod clock;
mod error;
pub mod first_order;
mod scheme_a;
mod scheme_b;
mod sequence;
mod setup;
mod signal;

pub use clock::clock_mach_zehnder;
pub use error::InterferometerError;
pub use first_order::{richardson, residual_ratio, scheme_a_prediction, scheme_b_prediction, RichardsonEstimate};
pub use scheme_a::{build_scheme_a, double_differential, scheme_a_observables, SchemeAObservables};
pub use scheme_b::{build_scheme_b, scheme_b_observables, SchemeBObservables};
pub use sequence::{SchemeASequence, SchemeBSequence};
pub use setup::Setup;
pub use signal::{exit_port_intensity, InterferenceResult, PairTerm, PortBranches};
