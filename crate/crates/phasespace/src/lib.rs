//! Closed algebra of canonical unitaries and their Gaussian expectation values.
//!
//! Every free-fall segment, gravitational displacement, laser kick and
//! dispersive phase in an interferometer is an element of the group generated
//! by `{1, Z, P, P^2}`. Such an element is stored through four parameters in
//! the fixed ordering
//!
//! ```text
//! U = exp(i theta) exp(i b.Z / hbar) exp(-i c.P / hbar) exp(-i a P^2 / hbar)
//! ```
//!
//! so products and inverses are exact, and the expectation value in a
//! Gaussian wavepacket has a closed form.

mod error;
mod ledger;
mod overlap;
mod unitary;

pub use error::PhaseSpaceError;
pub use ledger::PhaseLedger;
pub use overlap::{exit_signal, log_expectation, overlap_pairs, PairOverlap, WeightedBranch};
pub use unitary::{compose, CanonicalUnitary};

/// Double precision canonical unitary.
pub type Unitary = CanonicalUnitary<f64>;
/// Double precision weighted branch.
pub type Branch = WeightedBranch<f64>;
