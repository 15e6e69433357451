use e1m1_core::{lit, InternalState, Real};
use e1m1_polarization::CouplingSet;
use num_complex::Complex;

use crate::TwoLevelError;

/// Plane-wave two-level system after elimination and RWA, written in the
/// basis `(e, g)` as `1/2 [[gamma_bar + gamma, Omega], [Omega*, gamma_bar - gamma]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTwoLevel<T> {
    omega: Complex<T>,
    omega_ac_plus: T,
    omega_ac_minus: T,
    gamma: T,
    gamma_bar_offset: T,
    omega_eff: T,
}

impl<T: Real> EffectiveTwoLevel<T> {
    pub fn new(omega: Complex<T>, omega_ac_plus: T, omega_ac_minus: T, detuning: T) -> Self {
        let gamma = detuning + omega_ac_minus;
        Self {
            omega,
            omega_ac_plus,
            omega_ac_minus,
            gamma,
            gamma_bar_offset: detuning - omega_ac_plus,
            omega_eff: omega.norm().hypot(gamma),
        }
    }

    /// Two-level system without light shifts and with relative detuning `gamma`.
    pub fn resonant_with(omega: Complex<T>, gamma: T) -> Self {
        Self::new(omega, T::zero(), T::zero(), gamma)
    }

    /// Same light shifts with a different two-photon detuning.
    pub fn with_detuning(&self, detuning: T) -> Self {
        Self::new(self.omega, self.omega_ac_plus, self.omega_ac_minus, detuning)
    }

    pub fn omega(&self) -> Complex<T> {
        self.omega
    }

    pub fn omega_ac_plus(&self) -> T {
        self.omega_ac_plus
    }

    pub fn omega_ac_minus(&self) -> T {
        self.omega_ac_minus
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// Momentum independent part `delta - omega_AC^(+)` of the mean detuning.
    pub fn gamma_bar_offset(&self) -> T {
        self.gamma_bar_offset
    }

    pub fn omega_eff(&self) -> T {
        self.omega_eff
    }

    /// Mean detuning `P^2/(M hbar) + delta - omega_AC^(+)` for a momentum eigenvalue.
    pub fn gamma_bar(&self, p_squared: T, mass: T, hbar: T) -> T {
        p_squared / (mass * hbar) + self.gamma_bar_offset
    }

    /// Oscillation amplitude `|Omega|^2 / Omega_eff^2`.
    pub fn amplitude(&self) -> T {
        if self.omega_eff == T::zero() {
            return T::zero();
        }
        let r = self.omega.norm() / self.omega_eff;
        r * r
    }

    /// Evolution operator in the frame rotating with the mean detuning,
    /// rows and columns ordered `(e, g)`.
    pub fn propagator(&self, t: T) -> [[Complex<T>; 2]; 2] {
        let half = self.omega_eff * t / lit::<T>(2.0);
        let (s, c) = half.sin_cos();
        let zero = T::zero();
        if self.omega_eff == zero {
            let one = Complex::new(T::one(), zero);
            return [[one, Complex::new(zero, zero)], [Complex::new(zero, zero), one]];
        }
        let f = s / self.omega_eff;
        let i = Complex::new(zero, T::one());
        [
            [Complex::new(c, -self.gamma * f), -i * self.omega * f],
            [-i * self.omega.conj() * f, Complex::new(c, self.gamma * f)],
        ]
    }
}

/// `Omega = -Omega_B1^* Omega_E0 / (2 Delta)` built from the amplitudes that
/// drive the recoil-free path (the mirrored pair when applicable).
pub fn two_photon_rabi<T: Real>(c: &CouplingSet<T>) -> Result<Complex<T>, TwoLevelError> {
    if c.delta() == T::zero() {
        return Err(TwoLevelError::SingularDetuning);
    }
    let (e, b) = c.drive_pair().unwrap_or((c.omega_e()[0], c.omega_b()[1]));
    Ok(-(b.conj() * e) / (lit::<T>(2.0) * c.delta()))
}

/// Effective two-level parameters of a Doppler-free coupling set, including
/// the doubled light shifts `-|Omega_B1|^2/(2 Delta)` and
/// `-|Omega_E0|^2/(2 Delta)` on the excited and ground entries.
pub fn effective_hamiltonian<T: Real>(c: &CouplingSet<T>) -> Result<EffectiveTwoLevel<T>, TwoLevelError> {
    let (e, b) = c.drive_pair().ok_or(TwoLevelError::NotDopplerFree)?;
    let omega = two_photon_rabi(c)?;
    let two_delta = lit::<T>(2.0) * c.delta();
    let (se, sb) = (e.norm_sqr(), b.norm_sqr());
    Ok(EffectiveTwoLevel::new(omega, (se + sb) / two_delta, (se - sb) / two_delta, c.detuning()))
}

/// Rabi populations `(P_e, P_g)` at time `t` for an atom prepared in `initial`.
pub fn rabi_populations<T: Real>(
    t: T,
    e2l: &EffectiveTwoLevel<T>,
    initial: InternalState,
) -> Result<(T, T), TwoLevelError> {
    if t < T::zero() {
        return Err(TwoLevelError::Negative { what: "time", value: t.to_f64().unwrap_or(f64::NAN) });
    }
    let s = (e2l.omega_eff() * t / lit::<T>(2.0)).sin();
    let c = (e2l.omega_eff() * t / lit::<T>(2.0)).cos();
    let transfer = e2l.amplitude() * s * s;
    let stay = if e2l.omega_eff() == T::zero() {
        T::one()
    } else {
        let g = e2l.gamma() / e2l.omega_eff();
        c * c + g * g * s * s
    };
    Ok(match initial {
        InternalState::Ground => (transfer, stay),
        InternalState::Excited => (stay, transfer),
    })
}
