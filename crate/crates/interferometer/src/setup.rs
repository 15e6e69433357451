use e1m1_beam::PulseCoefficients;
use e1m1_core::{AtomSpecies, GaussianWavepacket, InternalState};
use e1m1_phasespace::{Branch, Unitary};
use e1m1_pulses::{generalized_pulse, PulseKind, PulseOperatorBranches, PulseOptions};
use num_complex::Complex64;

use crate::InterferometerError;

/// Everything a sequence needs besides its timing: the atom, gravity, the
/// initial wavepacket and the E1-M1 pulse coefficients.
///
/// Free segments use the state dependent masses of `species`; pulses use
/// the mean mass carried by `coeffs`, which must agree with the species.
#[derive(Debug, Clone, PartialEq)]
pub struct Setup {
    pub species: AtomSpecies<f64>,
    pub gravity: f64,
    pub psi: GaussianWavepacket<f64>,
    pub coeffs: PulseCoefficients<f64>,
    pub splitting: bool,
    pub keep_translation: bool,
}

impl Setup {
    pub fn new(
        species: AtomSpecies<f64>,
        gravity: f64,
        psi: GaussianWavepacket<f64>,
        coeffs: PulseCoefficients<f64>,
    ) -> Result<Self, InterferometerError> {
        let s = Self { species, gravity, psi, coeffs, splitting: false, keep_translation: false };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), InterferometerError> {
        let (m, pm) = (self.species.mass(), self.coeffs.mass());
        if (m - pm).abs() > 1e-12 * m.abs() {
            return Err(InterferometerError::MassMismatch { pulse: pm, species: m });
        }
        let (h, ph) = (self.species.hbar(), self.coeffs.hbar());
        if (h - ph).abs() > 1e-12 * h.abs() {
            return Err(InterferometerError::HbarMismatch { pulse: ph, species: h });
        }
        if !self.gravity.is_finite() || self.gravity < 0.0 {
            return Err(InterferometerError::InvalidInput(format!("gravity must be finite and non-negative, got {}", self.gravity)));
        }
        Ok(())
    }

    pub fn with_splitting(mut self, on: bool) -> Self {
        self.splitting = on;
        self
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self, InterferometerError> {
        Ok(Self { species: self.species.with_epsilon(epsilon)?, ..self.clone() })
    }

    pub fn with_coefficients(&self, coeffs: PulseCoefficients<f64>) -> Result<Self, InterferometerError> {
        let s = Self { coeffs, ..self.clone() };
        s.validate()?;
        Ok(s)
    }

    pub fn hbar(&self) -> f64 {
        self.species.hbar()
    }

    pub fn pulse(&self, kind: PulseKind) -> PulseOperatorBranches {
        let options = PulseOptions { splitting: self.splitting, keep_translation: self.keep_translation, gravity: self.gravity };
        generalized_pulse(kind, &self.coeffs, options)
    }

    /// Checks that a pulse duration stored in a sequence matches the one
    /// the coefficients produce.
    pub fn check_duration(&self, kind: PulseKind, stored: f64) -> Result<f64, InterferometerError> {
        let t = kind.area() / self.coeffs.omega0();
        if (t - stored).abs() > 1e-9 * t.abs().max(stored.abs()) {
            return Err(InterferometerError::Timing(format!("{kind} pulse lasts {t} for these couplings, sequence states {stored}")));
        }
        Ok(t)
    }

    /// Free fall of one internal state over `dt`.
    pub(crate) fn fall(&self, state: InternalState, dt: f64) -> Unitary {
        let label = format!("fall_{state}");
        Unitary::free_fall(self.species.mass_of(state), self.gravity, dt, self.hbar(), label)
    }

    /// Ideal Bragg kick `exp(i n k_p Z) / sqrt 2`.
    pub(crate) fn bragg(&self, n: f64, k_p: f64) -> (Complex64, Unitary) {
        (Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0), Unitary::kick_z(n * k_p, self.hbar()))
    }
}

/// Paths that share an internal state while a sequence is assembled.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PathSet {
    pub branches: Vec<Branch>,
    pub state: InternalState,
}

impl PathSet {
    pub fn start(state: InternalState, hbar: f64) -> Self {
        Self { branches: vec![Branch::new(Complex64::new(1.0, 0.0), Unitary::identity(hbar), "")], state }
    }

    pub fn then(mut self, weight: Complex64, op: &Unitary, label: &str) -> Self {
        self.branches = self.branches.iter().map(|b| b.then(weight, op, label)).collect();
        self
    }

    pub fn fall(self, setup: &Setup, dt: f64) -> Self {
        let op = setup.fall(self.state, dt);
        let label = format!("fall_{}", self.state);
        self.then(Complex64::new(1.0, 0.0), &op, &label)
    }

    pub fn bragg(self, setup: &Setup, n: f64, k_p: f64) -> Self {
        let (w, op) = setup.bragg(n, k_p);
        let label = if n == 0.0 { "bragg0".to_string() } else { format!("bragg{n:+}") };
        self.then(w, &op, &label)
    }

    /// Applies one cell of a pulse, multiplying the path count by the
    /// number of branches the cell holds.
    pub fn pulse(self, pulse: &PulseOperatorBranches, to: InternalState) -> Self {
        let cell = pulse.cell(to, self.state);
        let branches = self
            .branches
            .iter()
            .flat_map(|b| cell.iter().map(move |c| b.then(c.weight, &c.op, &c.label)))
            .collect();
        Self { branches, state: to }
    }
}
