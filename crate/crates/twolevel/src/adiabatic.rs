use e1m1_core::{lit, Axis, GaussianWavepacket, Real};
use e1m1_polarization::CouplingSet;
use num_complex::Complex;

use crate::projector::coupling_column;
use crate::TwoLevelError;

/// Centre-of-mass data the elimination needs: mass, hbar and the single
/// photon wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    pub mass: T,
    pub hbar: T,
    pub k_l: T,
}

impl<T: Real> Kinematics<T> {
    pub fn recoil_momentum(&self) -> T {
        self.hbar * self.k_l
    }
}

/// Adiabaticity parameters evaluated on a wavepacket, together with the
/// size of the kinetic correction to the scalar `1/Delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adiabaticity<T> {
    pub eps_omega: T,
    pub eps_delta: T,
    /// `<P^2> / (2 M hbar |Delta|)`.
    pub kinetic_correction: T,
}

impl<T: Real> Adiabaticity<T> {
    pub fn max(&self) -> T {
        self.eps_omega.max(self.eps_delta)
    }
}

/// `eps_Omega = ||Omega|| / |Delta|` and `eps_delta = ||delta(P)|| / |Delta|`.
///
/// `||Omega||^2 = <Omega^dagger Omega>` uses the non-rotating part of the
/// coupling column, and `||delta(P)||` is the larger of the two diagonal
/// expectation values. Both are conditioned on the initial wavepacket.
pub fn adiabaticity<T: Real>(
    c: &CouplingSet<T>,
    psi: &GaussianWavepacket<T>,
    kin: &Kinematics<T>,
) -> Result<Adiabaticity<T>, TwoLevelError> {
    if c.delta() == T::zero() {
        return Err(TwoLevelError::SingularDetuning);
    }
    let d = c.delta().abs();
    let dz = psi.position_width(Axis::Z, kin.hbar);
    let z0 = psi.r0()[2];
    // <exp(i q Z)> for the Gaussian
    let wave = |q: T| Complex::from_polar((-(q * q) * dz * dz / lit::<T>(2.0)).exp(), q * z0);
    let mut omega2 = T::zero();
    for row in coupling_column(c) {
        let rwa = row.rotating_wave();
        for (a, ca) in rwa.iter() {
            for (b, cb) in rwa.iter() {
                let q = lit::<T>(f64::from(b.n - a.n)) * kin.k_l;
                omega2 += (ca.conj() * cb * wave(q)).re;
            }
        }
    }
    let kinetic = psi.mean_p_squared() / (lit::<T>(2.0) * kin.mass * kin.hbar);
    let diag = (kinetic + c.detuning()).abs().max(kinetic.abs());
    Ok(Adiabaticity { eps_omega: omega2.max(T::zero()).sqrt() / d, eps_delta: diag / d, kinetic_correction: kinetic / d })
}

/// Whether the parameters allow the elimination. Above 0.2 the elimination
/// is refused; between 0.1 and 0.2 `Ok(false)` flags a warning.
pub fn check_adiabatic<T: Real>(a: &Adiabaticity<T>) -> Result<bool, TwoLevelError> {
    for (name, value) in [("eps_Omega", a.eps_omega), ("eps_delta", a.eps_delta)] {
        if value > lit(0.2) {
            return Err(TwoLevelError::NotAdiabatic { name, value: value.to_f64().unwrap_or(f64::NAN) });
        }
    }
    Ok(a.max() <= lit(0.1))
}
