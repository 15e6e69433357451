//! Brute-force reference solutions on a one-dimensional momentum/position
//! grid.
//!
//! All kicks point along `Z` and the transverse dependence enters only
//! through separable factors, so a single axis is enough for every check.
//! Wavefunctions are advanced with a second-order split step: the kinetic
//! energy in momentum space and the internal-state couplings through the
//! exact exponential of the pointwise level matrix.

mod beam_two_level;
mod error;
mod field;
mod grid;
mod propagate;
mod three_level;
mod wavefunction;

pub use beam_two_level::{propagate_two_level_beam, BeamModel, BeamTwoLevel};
pub use error::GridError;
pub use field::{MultiLevelField, THREE_LEVEL_NAMES, TWO_LEVEL_NAMES};
pub use grid::Grid1D;
pub use propagate::{propagate, ConvergenceReport, PointHamiltonian, Propagation, StepControl, TraceRow};
pub use three_level::{propagate_three_level, ThreeLevelOptions, ThreeLevelSystem};
pub use wavefunction::{overlap_numeric, separable_expectation, GridWavefunction};
