use e1m1_core::{lit, AtomSpecies, Axis, GaussianWavepacket, Real};
use e1m1_polarization::CouplingSet;
use e1m1_twolevel::effective_hamiltonian;

use crate::error::BeamError;
use crate::geometry::{effective_kick, recoil_frequency, GaussianBeamParams};

/// Largest `<Z^2>/z_R^2` or `<rho^2>/w0^2` accepted by the analytic path.
pub const EXPANSION_LIMIT: f64 = 0.01;

/// Coefficients of the pulse Hamiltonian in the interaction frame of the
/// mean Hamiltonian, to second order in `Zs = Z_H/z_R` and `rho = rho_H/w0`.
///
/// All rates are angular frequencies (the energy operators divided by
/// hbar):
///
/// * `Omega_H = Omega0 (1 - Zs^2 - 2 rho^2)`, with `phi_H = 0`;
/// * `Delta_H = nu(P) + omega_k + delta + omega_AC^-(0) (1 - Zs^2 - 2 rho^2)`;
/// * `S_H = -omega_AC^+(0) (Zs^2 + 2 rho^2) / 2`.
///
/// The argument of the complex two-photon Rabi frequency is a constant
/// laser phase and is kept separately in `phase0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseCoefficients<T> {
    beam: GaussianBeamParams<T>,
    mass: T,
    hbar: T,
    omega0: T,
    phase0: T,
    omega_ac_plus0: T,
    omega_ac_minus0: T,
    delta: T,
    k: T,
    omega_k: T,
}

impl<T: Real> PulseCoefficients<T> {
    /// Coefficients from explicit on-axis rates. `omega0` is the modulus of
    /// the two-photon Rabi frequency.
    pub fn from_rates(
        beam: GaussianBeamParams<T>,
        mass: T,
        hbar: T,
        omega0: T,
        omega_ac_plus0: T,
        omega_ac_minus0: T,
        delta: T,
    ) -> Self {
        Self {
            beam,
            mass,
            hbar,
            omega0,
            phase0: T::zero(),
            omega_ac_plus0,
            omega_ac_minus0,
            delta,
            k: effective_kick(&beam)[2],
            omega_k: recoil_frequency(&beam, mass, hbar),
        }
    }

    pub fn beam(&self) -> &GaussianBeamParams<T> {
        &self.beam
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// On-axis two-photon Rabi frequency `|Omega(0)|`.
    pub fn omega0(&self) -> T {
        self.omega0
    }

    /// Constant laser phase `arg Omega(0)`.
    pub fn phase0(&self) -> T {
        self.phase0
    }

    pub fn omega_ac_plus0(&self) -> T {
        self.omega_ac_plus0
    }

    pub fn omega_ac_minus0(&self) -> T {
        self.omega_ac_minus0
    }

    /// Two-photon detuning `delta`.
    pub fn delta(&self) -> T {
        self.delta
    }

    /// Effective kick wavenumber `2/z_R`.
    pub fn k(&self) -> T {
        self.k
    }

    /// Recoil frequency `hbar k^2 / (2M)`.
    pub fn omega_k(&self) -> T {
        self.omega_k
    }

    pub fn with_delta(mut self, delta: T) -> Self {
        self.delta = delta;
        self
    }

    /// Same coefficients with the detuning set to `compensated_detuning`.
    pub fn compensated(self) -> Self {
        let d = compensated_detuning(&self);
        self.with_delta(d)
    }

    /// Doppler detuning `nu(P) = k P_z / M`.
    pub fn doppler(&self, p_z: T) -> T {
        self.k * p_z / self.mass
    }

    /// Coefficient of both `Zs^2` and `2 rho^2` in `Omega_H`.
    pub fn omega_quadratic(&self) -> T {
        -self.omega0
    }

    /// Position independent part of `Delta_H` at `P_z = 0`.
    pub fn detuning_constant(&self) -> T {
        self.omega_k + self.delta + self.omega_ac_minus0
    }

    /// Coefficient of both `Zs^2` and `2 rho^2` in `Delta_H`.
    pub fn detuning_quadratic(&self) -> T {
        -self.omega_ac_minus0
    }

    /// Coefficient of both `Zs^2` and `2 rho^2` in `S_H`.
    pub fn stark_quadratic(&self) -> T {
        -self.omega_ac_plus0 / lit(2.0)
    }

    /// Second-order phase coefficient of `phi_H`; the linear part is the
    /// kick and the curvature contributions cancel between the two beams.
    pub fn phase_quadratic(&self) -> T {
        T::zero()
    }

    /// Quadratic form `Zs^2 + 2 rho^2` at a point `(Z, rho)`.
    pub fn quadratic_form(&self, z: T, rho: T) -> T {
        let s = z / self.beam.rayleigh_length();
        let r = rho / self.beam.waist();
        s * s + lit::<T>(2.0) * r * r
    }

    /// `Omega_H` at a point.
    pub fn omega_h(&self, z: T, rho: T) -> T {
        self.omega0 + self.omega_quadratic() * self.quadratic_form(z, rho)
    }

    /// `Delta_H` at a point for momentum `p_z`.
    pub fn detuning_h(&self, p_z: T, z: T, rho: T) -> T {
        self.doppler(p_z) + self.detuning_constant() + self.detuning_quadratic() * self.quadratic_form(z, rho)
    }

    /// `S_H` at a point.
    pub fn stark_h(&self, z: T, rho: T) -> T {
        self.stark_quadratic() * self.quadratic_form(z, rho)
    }

    /// Axial velocity `P_z/M + hbar k/(2M)` along the mean-Hamiltonian
    /// trajectory.
    pub fn drift_velocity(&self, p_z: T) -> T {
        (p_z + self.hbar * self.k / lit(2.0)) / self.mass
    }

    /// Expectation values of `Zs_H^2` and `rho_H^2` for a wavepacket,
    /// maximised over the window `[0, duration]`.
    pub fn expansion_norms(&self, psi: &GaussianWavepacket<T>, duration: T) -> ExpansionNorms<T> {
        let mut out = ExpansionNorms { z2: T::zero(), rho2: T::zero() };
        // both moments are convex in t, so the endpoints bound the window
        for t in [T::zero(), duration] {
            let z2 = self.axis_moment(psi, Axis::Z, t) / (self.beam.rayleigh_length() * self.beam.rayleigh_length());
            let rho2 = (self.axis_moment(psi, Axis::X, t) + self.axis_moment(psi, Axis::Y, t))
                / (self.beam.waist() * self.beam.waist());
            out.z2 = out.z2.max(z2);
            out.rho2 = out.rho2.max(rho2);
        }
        out
    }

    fn axis_moment(&self, psi: &GaussianWavepacket<T>, axis: Axis, t: T) -> T {
        let i = axis.index();
        let v = if axis == Axis::Z { self.drift_velocity(psi.p0()[i]) } else { psi.p0()[i] / self.mass };
        let mean = psi.r0()[i] + v * t;
        let sx = psi.position_width(axis, self.hbar);
        let sv = psi.momentum_width(axis) * t / self.mass;
        mean * mean + sx * sx + sv * sv
    }

    /// Rejects wavepackets outside the range of the second-order expansion.
    pub fn check_expansion(&self, psi: &GaussianWavepacket<T>, duration: T) -> Result<ExpansionNorms<T>, BeamError> {
        let n = self.expansion_norms(psi, duration);
        let limit = lit::<T>(EXPANSION_LIMIT);
        for (what, value) in [("<Z^2>/z_R^2", n.z2), ("<rho^2>/w0^2", n.rho2)] {
            if value > limit {
                return Err(BeamError::OutsideExpansion {
                    what,
                    value: value.to_f64().unwrap_or(f64::NAN),
                    limit: EXPANSION_LIMIT,
                });
            }
        }
        Ok(n)
    }
}

/// State-conditioned sizes of the scaled coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionNorms<T> {
    pub z2: T,
    pub rho2: T,
}

/// Builds the pulse coefficients for a Doppler-free coupling set driving
/// `species` in `beam`.
pub fn pulse_coefficients<T: Real>(
    beam: &GaussianBeamParams<T>,
    c: &CouplingSet<T>,
    species: &AtomSpecies<T>,
) -> Result<PulseCoefficients<T>, BeamError> {
    let e2l = effective_hamiltonian(c)?;
    let mut out = PulseCoefficients::from_rates(
        *beam,
        species.mass(),
        species.hbar(),
        e2l.omega().norm(),
        e2l.omega_ac_plus(),
        e2l.omega_ac_minus(),
        c.detuning(),
    );
    out.phase0 = e2l.omega().arg();
    Ok(out)
}

/// Two-photon detuning `-omega_k - omega_AC^-(0)` that removes the recoil
/// and the differential light shift from the on-axis detuning.
pub fn compensated_detuning<T: Real>(coeffs: &PulseCoefficients<T>) -> T {
    -coeffs.omega_k - coeffs.omega_ac_minus0
}
