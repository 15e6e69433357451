//! Shared building blocks for the E1-M1 clock interferometry toolkit.
//!
//! Everything downstream works in an internal unit system in which the
//! reduced Planck constant is usually one. [`UnitSystem`] does the SI
//! bookkeeping, [`AtomSpecies`] stores the state dependent masses and
//! [`GaussianWavepacket`] describes the initial centre-of-mass state.

mod error;
mod gravity;
pub mod presets;
mod scalar;
mod species;
mod units;
mod wavepacket;

pub use error::CoreError;
pub use gravity::GravityFrame;
pub use scalar::{lit, Axis, Real, Vec3};
pub use species::{AtomSpecies, InternalState};
pub use units::{Dimension, UnitSystem, UnitSystemBuilder, C_SI, HBAR_SI};
pub use wavepacket::GaussianWavepacket;

/// Double precision species, the default everywhere in the toolkit.
pub type Species = AtomSpecies<f64>;
/// Double precision wavepacket.
pub type Wavepacket = GaussianWavepacket<f64>;
/// Double precision unit system.
pub type Units = UnitSystem<f64>;
/// Double precision gravity frame.
pub type Gravity = GravityFrame<f64>;
