//! Selection rules and single-photon Rabi frequencies for the E1-M1 chain
//! `g = 1S0 -> a = 3P1 -> e = 3P0` driven by two counter-propagating beams.
//!
//! Vectors are Cartesian with complex components. The spherical unit vectors
//! are `e_+ = -(x + i y)/sqrt(2)`, `e_0 = z` and `e_- = (x - i y)/sqrt(2)`,
//! and every dot product is bilinear (no conjugation), so `e_q . e_{-q} = (-1)^q`.

mod coupling;
mod error;
mod field;
mod level;

pub use coupling::{coupling_report, coupling_set, CouplingReportRow, CouplingSet, DopplerConfig};
pub use error::PolarizationError;
pub use field::{dot, spherical, Direction, FieldComponent, Polarization, CVec3};
pub use level::{matrix_element, transition_allowed, LevelSpec, Multipole, Parity, TransitionCheck};
