use e1m1_polarization::CouplingSet;
use e1m1_twolevel::{coupling_column, Kinematics};
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{propagate, GridError, MultiLevelField, PointHamiltonian, Propagation, StepControl};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeLevelOptions {
    /// Drop the couplings rotating at `exp(+-2 i omega t)`.
    pub rwa: bool,
    /// Optical angular frequency `omega` of the counter-rotating terms,
    /// only used when `rwa` is off.
    pub optical_frequency: f64,
    /// Gravitational acceleration along `-Z`, entering as the potential
    /// `M g Z`.
    pub gravity: f64,
    /// Let the laser phase follow the free fall, `k_L Z -> k_L (Z + g t^2 / 2)`,
    /// which removes the `k_L g t^2 / 2` phase seen by a falling atom.
    pub chirp: bool,
}

impl Default for ThreeLevelOptions {
    fn default() -> Self {
        Self { rwa: true, optical_frequency: 0.0, gravity: 0.0, chirp: true }
    }
}

/// Plane-wave three-level E1-M1 system
///
/// ```text
/// i d/dt (psi_a, psi_e, psi_g) = [[Delta(P), Omega^dagger], [Omega, delta(P)]] (psi_a, psi_e, psi_g)
/// ```
///
/// with `Delta(P) = Delta + P^2/(2 M hbar)`, `delta(P) = diag(delta, 0) + P^2/(2 M hbar)`
/// and the coupling column `Omega(Z, t)` built from the single-photon
/// amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeLevelSystem {
    column: [Vec<(i32, i32, Complex64)>; 2],
    delta: f64,
    detuning: f64,
    kin: Kinematics<f64>,
    options: ThreeLevelOptions,
}

impl ThreeLevelSystem {
    pub fn new(c: &CouplingSet<f64>, kin: Kinematics<f64>, options: ThreeLevelOptions) -> Result<Self, GridError> {
        if !options.rwa && !(options.optical_frequency.is_finite() && options.optical_frequency > 0.0) {
            return Err(GridError::InvalidInput("counter-rotating terms need a positive optical frequency".into()));
        }
        if !(options.gravity.is_finite() && options.gravity >= 0.0) {
            return Err(GridError::InvalidInput(format!("gravity must be non-negative, got {}", options.gravity)));
        }
        let column = coupling_column(c).map(|row| {
            let row = if options.rwa { row.rotating_wave() } else { row };
            row.iter().map(|(mono, v)| (mono.n, mono.m, *v)).collect()
        });
        Ok(Self { column, delta: c.delta(), detuning: c.detuning(), kin, options })
    }

    fn entry(&self, row: usize, z: f64, t: f64) -> Complex64 {
        let w = 2.0 * self.options.optical_frequency * t;
        self.column[row]
            .iter()
            .map(|&(n, m, c)| c * Complex64::from_polar(1.0, f64::from(n) * self.kin.k_l * z + f64::from(m) * w))
            .sum()
    }
}

impl PointHamiltonian for ThreeLevelSystem {
    fn levels(&self) -> usize {
        3
    }

    fn mass(&self) -> f64 {
        self.kin.mass
    }

    fn is_static(&self) -> bool {
        let rotating = self.column.iter().flatten().any(|&(_, m, _)| m != 0);
        !rotating && !(self.options.chirp && self.options.gravity != 0.0)
    }

    fn matrix(&self, z: f64, t: f64) -> DMatrix<Complex64> {
        let g = self.options.gravity;
        let potential = self.kin.mass * g * z / self.kin.hbar;
        let z_laser = if self.options.chirp { z + g * t * t / 2.0 } else { z };
        let (oe, og) = (self.entry(0, z_laser, t), self.entry(1, z_laser, t));
        let c = |x: f64| Complex64::new(x, 0.0);
        DMatrix::from_row_slice(
            3,
            3,
            &[
                c(self.delta + potential),
                oe.conj(),
                og.conj(),
                oe,
                c(self.detuning + potential),
                c(0.0),
                og,
                c(0.0),
                c(potential),
            ],
        )
    }

    fn largest_kick(&self, t_end: f64) -> f64 {
        let n = self.column.iter().flatten().map(|&(n, _, _)| n.unsigned_abs()).max().unwrap_or(0);
        let factor = if self.options.rwa { 1.0 } else { 2.0 };
        factor * f64::from(n) * self.kin.recoil_momentum() + self.kin.mass * self.options.gravity * t_end
    }
}

/// Propagates a `(a, e, g)` field through the three-level system.
pub fn propagate_three_level(
    field: &MultiLevelField,
    couplings: &CouplingSet<f64>,
    kin: Kinematics<f64>,
    t_end: f64,
    options: ThreeLevelOptions,
    control: StepControl,
) -> Result<Propagation, GridError> {
    if kin.hbar != field.grid().hbar() {
        return Err(GridError::InvalidInput("grid and kinematics use different hbar".into()));
    }
    let system = ThreeLevelSystem::new(couplings, kin, options)?;
    propagate(field, &system, t_end, control)
}
