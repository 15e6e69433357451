use std::fmt;

use crate::error::{finite, positive, CoreError};
use crate::{lit, Real};

/// Internal clock state of the effective two-level atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InternalState {
    Ground,
    Excited,
}

impl InternalState {
    pub fn flipped(self) -> Self {
        match self {
            Self::Ground => Self::Excited,
            Self::Excited => Self::Ground,
        }
    }

    /// Sign entering the state dependent mass `M (1 + sign eps / 2)`.
    pub fn mass_sign(self) -> i32 {
        match self {
            Self::Ground => -1,
            Self::Excited => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Ground => "g",
            Self::Excited => "e",
        }
    }
}

impl fmt::Display for InternalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Atom with a mass defect between its two clock states.
///
/// `mass` is the mean of the ground and excited masses. The species also
/// carries the internal value of hbar so that every phase computed from it
/// is consistent with the unit system it was built in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpecies<T> {
    mass: T,
    delta_mass: T,
    hbar: T,
    omega_eg: Option<T>,
}

impl<T: Real> AtomSpecies<T> {
    /// Largest accepted magnitude of the mass defect ratio.
    pub fn epsilon_limit() -> T {
        lit(0.1)
    }

    pub fn new(mass: T, delta_mass: T, hbar: T) -> Result<Self, CoreError> {
        let mass = positive("mass", mass)?;
        let delta_mass = finite("mass difference", delta_mass)?;
        let hbar = positive("hbar", hbar)?;
        let eps = delta_mass / mass;
        if eps.abs() >= Self::epsilon_limit() {
            return Err(CoreError::EpsilonTooLarge { epsilon: eps.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self { mass, delta_mass, hbar, omega_eg: None })
    }

    /// Builds the species from the mean mass and the dimensionless defect.
    pub fn from_epsilon(mass: T, epsilon: T, hbar: T) -> Result<Self, CoreError> {
        Self::new(mass, epsilon * mass, hbar)
    }

    /// Derives the mass difference from the clock frequency, `dM = hbar omega / c^2`.
    pub fn from_clock(mass: T, omega_eg: T, hbar: T, c: T) -> Result<Self, CoreError> {
        let c = positive("speed of light", c)?;
        let omega_eg = positive("clock frequency", omega_eg)?;
        let mut s = Self::new(mass, hbar * omega_eg / (c * c), hbar)?;
        s.omega_eg = Some(omega_eg);
        Ok(s)
    }

    /// Attaches a clock frequency after checking it against the mass defect.
    pub fn with_clock(mut self, omega_eg: T, c: T) -> Result<Self, CoreError> {
        let c = positive("speed of light", c)?;
        let omega_eg = positive("clock frequency", omega_eg)?;
        let rest = self.delta_mass * c * c;
        let photon = self.hbar * omega_eg;
        let tol = lit::<T>(1e-12).max(T::epsilon() * lit(8.0));
        if ((rest - photon) / photon).abs() > tol {
            return Err(CoreError::ClockMismatch {
                rest_energy: rest.to_f64().unwrap_or(f64::NAN),
                photon_energy: photon.to_f64().unwrap_or(f64::NAN),
            });
        }
        self.omega_eg = Some(omega_eg);
        Ok(self)
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn delta_mass(&self) -> T {
        self.delta_mass
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn omega_eg(&self) -> Option<T> {
        self.omega_eg
    }

    pub fn epsilon(&self) -> T {
        self.delta_mass / self.mass
    }

    pub fn mass_g(&self) -> T {
        self.mass - self.delta_mass * lit(0.5)
    }

    pub fn mass_e(&self) -> T {
        self.mass + self.delta_mass * lit(0.5)
    }

    pub fn mass_of(&self, state: InternalState) -> T {
        match state {
            InternalState::Ground => self.mass_g(),
            InternalState::Excited => self.mass_e(),
        }
    }

    /// Same atom with a different mass defect ratio.
    pub fn with_epsilon(&self, epsilon: T) -> Result<Self, CoreError> {
        Self::from_epsilon(self.mass, epsilon, self.hbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masses_split_symmetrically() {
        let s = AtomSpecies::from_epsilon(2.0f64, 1e-3, 1.0).unwrap();
        assert_eq!(s.mass_g(), 2.0 - 1e-3);
        assert_eq!(s.mass_e(), 2.0 + 1e-3);
        assert!((s.epsilon() - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn rejects_large_defect() {
        assert!(matches!(
            AtomSpecies::from_epsilon(1.0, 0.1, 1.0),
            Err(CoreError::EpsilonTooLarge { .. })
        ));
        assert!(AtomSpecies::from_epsilon(1.0, -0.2, 1.0).is_err());
        assert!(AtomSpecies::<f64>::new(0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn clock_consistency() {
        let (m, w, h, c): (f64, f64, f64, f64) = (1.46e-25, 2.7e15, 1.054_571_817e-34, 299_792_458.0);
        let s = AtomSpecies::from_clock(m, w, h, c).unwrap();
        let rel = (s.delta_mass() * c * c - h * w) / (h * w);
        assert!(rel.abs() < 1e-12);
        assert!(s.with_clock(w, c).is_ok());
        assert!(matches!(s.with_clock(w * 1.001, c), Err(CoreError::ClockMismatch { .. })));
    }

    #[test]
    fn state_helpers() {
        assert_eq!(InternalState::Ground.flipped(), InternalState::Excited);
        assert_eq!(InternalState::Excited.to_string(), "e");
        let s = AtomSpecies::from_epsilon(1.0f32, 0.01, 1.0).unwrap();
        assert!(s.mass_of(InternalState::Excited) > s.mass_of(InternalState::Ground));
    }
}
