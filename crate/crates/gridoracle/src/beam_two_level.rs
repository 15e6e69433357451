use e1m1_beam::PulseCoefficients;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{propagate, GridError, MultiLevelField, PointHamiltonian, Propagation, StepControl};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamModel {
    /// Closed-form on-axis profiles: `|Omega| / Omega0 = I = 1/(1 + s^2)`
    /// and laser phase `2 arctan s`, `s = Z/z_R`.
    Exact,
    /// Second-order profiles `1 - s^2` with the linear laser phase `k Z`.
    Expanded,
}

/// Lab-frame effective two-level atom on the beam axis, levels `(e, g)`:
///
/// ```text
/// H / hbar = P^2/(2 M hbar) + [[delta - w_AC1 I(Z), Omega(Z) e^{i Phi(Z)} / 2],
///                              [c.c.,               -w_AC0 I(Z)]]
/// ```
///
/// with `w_AC0 = (w+ + w-)/2`, `w_AC1 = (w+ - w-)/2` taken from the pulse
/// coefficients and an optional gravitational potential `M g Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamTwoLevel {
    coeffs: PulseCoefficients<f64>,
    model: BeamModel,
    gravity: f64,
}

impl BeamTwoLevel {
    pub fn new(coeffs: PulseCoefficients<f64>, model: BeamModel) -> Self {
        Self { coeffs, model, gravity: 0.0 }
    }

    pub fn with_gravity(mut self, g: f64) -> Self {
        self.gravity = g;
        self
    }

    pub fn coefficients(&self) -> &PulseCoefficients<f64> {
        &self.coeffs
    }

    /// Relative intensity and complex coupling profile at `z`.
    fn profiles(&self, z: f64) -> (f64, Complex64) {
        let beam = self.coeffs.beam();
        match self.model {
            BeamModel::Exact => (beam.intensity_profile([0.0, 0.0, z]), beam.coupling_profile([0.0, 0.0, z])),
            BeamModel::Expanded => {
                let s = z / beam.rayleigh_length();
                let f = 1.0 - s * s;
                (f, Complex64::from_polar(f, self.coeffs.k() * z))
            }
        }
    }
}

impl PointHamiltonian for BeamTwoLevel {
    fn levels(&self) -> usize {
        2
    }

    fn mass(&self) -> f64 {
        self.coeffs.mass()
    }

    fn is_static(&self) -> bool {
        true
    }

    fn matrix(&self, z: f64, _t: f64) -> DMatrix<Complex64> {
        let pc = &self.coeffs;
        let (intensity, profile) = self.profiles(z);
        let ac0 = (pc.omega_ac_plus0() + pc.omega_ac_minus0()) / 2.0;
        let ac1 = (pc.omega_ac_plus0() - pc.omega_ac_minus0()) / 2.0;
        let potential = pc.mass() * self.gravity * z / pc.hbar();
        let off = profile * Complex64::from_polar(pc.omega0() / 2.0, pc.phase0());
        let c = |x: f64| Complex64::new(x, 0.0);
        DMatrix::from_row_slice(
            2,
            2,
            &[c(pc.delta() - ac1 * intensity + potential), off, off.conj(), c(-ac0 * intensity + potential)],
        )
    }

    fn largest_kick(&self, t_end: f64) -> f64 {
        self.coeffs.hbar() * self.coeffs.k() + self.coeffs.mass() * self.gravity * t_end
    }
}

/// Propagates an `(e, g)` field through the beam-driven two-level system.
pub fn propagate_two_level_beam(
    field: &MultiLevelField,
    system: &BeamTwoLevel,
    t_end: f64,
    control: StepControl,
) -> Result<Propagation, GridError> {
    if system.coeffs.hbar() != field.grid().hbar() {
        return Err(GridError::InvalidInput("grid and pulse coefficients use different hbar".into()));
    }
    propagate(field, system, t_end, control)
}
