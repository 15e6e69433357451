//! Fundamental Gaussian beam geometry and the second-order expansion of
//! the position dependent two-photon coupling around the beam waist.
//!
//! The counter-propagating pair shares one waist. In the two-photon
//! coupling the wavefront curvature and the plane-wave factors cancel and
//! the Gouy phases add, so the coupling picks up the phase
//! `2 arctan(Z/z_R)` whose gradient at the origin is the effective kick
//! `2/z_R`.

mod coefficients;
mod error;
mod geometry;

pub use coefficients::{compensated_detuning, pulse_coefficients, ExpansionNorms, PulseCoefficients, EXPANSION_LIMIT};
pub use error::BeamError;
pub use geometry::{beam_factors, effective_kick, recoil_frequency, BeamFactorComparison, BeamFactors, GaussianBeamParams};

/// Double precision beam.
pub type Beam = GaussianBeamParams<f64>;
/// Double precision pulse coefficients.
pub type Coefficients = PulseCoefficients<f64>;
