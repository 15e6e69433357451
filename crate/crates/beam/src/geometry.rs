use e1m1_core::{lit, Real, Vec3};
use num_complex::Complex;

use crate::error::{positive, BeamError};

/// TEM00 beam parameters. The Rayleigh length and waist are tied together
/// through the wavelength, `z_R = pi w0^2 / lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBeamParams<T> {
    w0: T,
    z_r: T,
    lambda: T,
    k_l: T,
}

impl<T: Real> GaussianBeamParams<T> {
    /// Beam from its waist and wavelength.
    pub fn new(w0: T, lambda: T) -> Result<Self, BeamError> {
        let w0 = positive("beam waist", w0)?;
        let lambda = positive("wavelength", lambda)?;
        Ok(Self::assemble(w0, T::PI() * w0 * w0 / lambda, lambda))
    }

    /// Beam from its Rayleigh length and wavelength.
    pub fn from_rayleigh(z_r: T, lambda: T) -> Result<Self, BeamError> {
        let z_r = positive("Rayleigh length", z_r)?;
        let lambda = positive("wavelength", lambda)?;
        Ok(Self::assemble((z_r * lambda / T::PI()).sqrt(), z_r, lambda))
    }

    /// Beam from waist and Rayleigh length, the wavelength following from
    /// the paraxial relation.
    pub fn from_waist_and_rayleigh(w0: T, z_r: T) -> Result<Self, BeamError> {
        let w0 = positive("beam waist", w0)?;
        let z_r = positive("Rayleigh length", z_r)?;
        Ok(Self::assemble(w0, z_r, T::PI() * w0 * w0 / z_r))
    }

    /// Beam with all three lengths given; they must satisfy
    /// `z_R = pi w0^2 / lambda` to 1e-12 relative.
    pub fn with_all(w0: T, z_r: T, lambda: T) -> Result<Self, BeamError> {
        let w0 = positive("beam waist", w0)?;
        let z_r = positive("Rayleigh length", z_r)?;
        let lambda = positive("wavelength", lambda)?;
        let expected = T::PI() * w0 * w0 / lambda;
        if ((z_r - expected) / expected).abs() > lit(1e-12) {
            return Err(BeamError::RayleighMismatch {
                z_r: z_r.to_f64().unwrap_or(f64::NAN),
                expected: expected.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self::assemble(w0, z_r, lambda))
    }

    fn assemble(w0: T, z_r: T, lambda: T) -> Self {
        Self { w0, z_r, lambda, k_l: lit::<T>(2.0) * T::PI() / lambda }
    }

    pub fn waist(&self) -> T {
        self.w0
    }

    pub fn rayleigh_length(&self) -> T {
        self.z_r
    }

    pub fn wavelength(&self) -> T {
        self.lambda
    }

    /// Optical wavenumber `2 pi / lambda`.
    pub fn wavenumber(&self) -> T {
        self.k_l
    }

    /// Spot size `w(Z)`.
    pub fn spot_size(&self, z: T) -> T {
        let s = z / self.z_r;
        self.w0 * (T::one() + s * s).sqrt()
    }

    /// Complex envelope of the forward (`sign = +1`) or backward
    /// (`sign = -1`) beam relative to its on-waist amplitude, including the
    /// plane-wave factor `exp(sign i k_L Z)`.
    ///
    /// Both beams share the waist plane. The backward beam is the complex
    /// conjugate of the forward one in its spatial phase, so the curvature
    /// terms and the plane-wave factors cancel in the two-photon product
    /// while the Gouy phases add up.
    pub fn envelope(&self, r: Vec3<T>, sign: T) -> Complex<T> {
        let f = beam_factors(self, r[2]).exact;
        let rho2 = r[0] * r[0] + r[1] * r[1];
        let amp = self.w0 * f.inv_spot * (-(rho2 * f.inv_spot * f.inv_spot)).exp();
        let phase = sign * (self.k_l * r[2] - self.k_l * rho2 * f.inv_curvature / lit(2.0)) + f.gouy;
        Complex::from_polar(amp, phase)
    }

    /// Two-photon coupling profile `E_0(R) B_1(R) / (E_0 B_1)`, whose
    /// modulus scales the two-photon Rabi frequency and whose argument is
    /// the laser phase `Phi(R) - Phi(0)`.
    pub fn coupling_profile(&self, r: Vec3<T>) -> Complex<T> {
        self.envelope(r, T::one()) * self.envelope(r, -T::one())
    }

    /// Intensity profile `|E(R)|^2 / |E_0|^2`, shared by both beams and thus
    /// by both light shifts.
    pub fn intensity_profile(&self, r: Vec3<T>) -> T {
        self.envelope(r, T::one()).norm_sqr()
    }

    /// Laser phase `Phi(R) - Phi(0)` of the two-photon coupling.
    pub fn laser_phase(&self, r: Vec3<T>) -> T {
        self.coupling_profile(r).arg()
    }
}

/// Inverse spot size, inverse radius of curvature and Gouy phase at one
/// axial position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamFactors<T> {
    pub inv_spot: T,
    pub inv_curvature: T,
    pub gouy: T,
}

/// Closed forms, their second-order expansions in `Z/z_R`, and the size
/// of the first neglected term of each alternating series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamFactorComparison<T> {
    pub exact: BeamFactors<T>,
    pub expanded: BeamFactors<T>,
    pub remainder_bound: BeamFactors<T>,
}

impl<T: Real> BeamFactorComparison<T> {
    /// Absolute deviation of the expansion from the closed form.
    pub fn deviation(&self) -> BeamFactors<T> {
        BeamFactors {
            inv_spot: (self.exact.inv_spot - self.expanded.inv_spot).abs(),
            inv_curvature: (self.exact.inv_curvature - self.expanded.inv_curvature).abs(),
            gouy: (self.exact.gouy - self.expanded.gouy).abs(),
        }
    }

    /// Whether every deviation stays within its remainder bound, allowing a
    /// few units of rounding in the closed form itself. Near the waist the
    /// remainder drops below the last bit of `w^-1`.
    pub fn within_bound(&self) -> bool {
        let d = self.deviation();
        let b = self.remainder_bound;
        let slack = |x: T| lit::<T>(8.0) * T::epsilon() * x.abs();
        d.inv_spot <= b.inv_spot + slack(self.exact.inv_spot)
            && d.inv_curvature <= b.inv_curvature + slack(self.exact.inv_curvature)
            && d.gouy <= b.gouy + slack(self.exact.gouy)
    }
}

/// Evaluates `w^-1(Z)`, `R^-1(Z)` and `zeta(Z)`.
///
/// The expansions are `w0^-1 (1 - s^2/2)`, `(s/z_R)(1 - s^2)` and `s` with
/// `s = Z/z_R`. For `|s| < 1` the three series alternate with decreasing
/// terms, so the first omitted term bounds the error: `3 s^4 / (8 w0)`,
/// `|s|^5 / z_R` and `|s|^3 / 3`.
pub fn beam_factors<T: Real>(b: &GaussianBeamParams<T>, z: T) -> BeamFactorComparison<T> {
    let s = z / b.z_r;
    let s2 = s * s;
    let one = T::one();
    let exact = BeamFactors {
        inv_spot: one / (b.w0 * (one + s2).sqrt()),
        inv_curvature: s / (b.z_r * (one + s2)),
        gouy: s.atan(),
    };
    let expanded = BeamFactors {
        inv_spot: (one - s2 / lit(2.0)) / b.w0,
        inv_curvature: s * (one - s2) / b.z_r,
        gouy: s,
    };
    let remainder_bound = BeamFactors {
        inv_spot: lit::<T>(3.0 / 8.0) * s2 * s2 / b.w0,
        inv_curvature: s.abs().powi(5) / b.z_r,
        gouy: s.abs().powi(3) / lit(3.0),
    };
    BeamFactorComparison { exact, expanded, remainder_bound }
}

/// Effective kick wavevector `grad Phi` at the origin, `2/z_R` along +Z.
pub fn effective_kick<T: Real>(b: &GaussianBeamParams<T>) -> Vec3<T> {
    [T::zero(), T::zero(), lit::<T>(2.0) / b.z_r]
}

/// Recoil frequency `hbar k^2 / (2M)` of the effective kick.
pub fn recoil_frequency<T: Real>(b: &GaussianBeamParams<T>, mass: T, hbar: T) -> T {
    let k = effective_kick(b)[2];
    hbar * k * k / (lit::<T>(2.0) * mass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn on_waist_and_at_rayleigh() {
        let b = GaussianBeamParams::from_waist_and_rayleigh(1e-3, 5.0).unwrap();
        let f = beam_factors(&b, 0.0);
        assert_eq!(f.exact, BeamFactors { inv_spot: 1e3, inv_curvature: 0.0, gouy: 0.0 });
        let f = beam_factors(&b, 5.0);
        assert!((f.exact.inv_spot - 1e3 / 2f64.sqrt()).abs() < 1e-9);
        assert!((f.exact.gouy - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn rayleigh_relation_enforced() {
        let b = GaussianBeamParams::new(1e-3f64, 698e-9).unwrap();
        assert!(GaussianBeamParams::with_all(1e-3, b.rayleigh_length(), 698e-9).is_ok());
        assert!(matches!(
            GaussianBeamParams::with_all(1e-3, b.rayleigh_length() * 1.001, 698e-9),
            Err(BeamError::RayleighMismatch { .. })
        ));
        assert!(GaussianBeamParams::new(0.0, 1e-6).is_err());
        let back = GaussianBeamParams::from_rayleigh(b.rayleigh_length(), 698e-9).unwrap();
        assert!((back.waist() - 1e-3).abs() < 1e-18);
    }

    #[test]
    fn kick_and_recoil() {
        let b = GaussianBeamParams::from_waist_and_rayleigh(1.0, 1.0).unwrap();
        assert_eq!(effective_kick(&b), [0.0, 0.0, 2.0]);
        assert_eq!(recoil_frequency(&b, 2.0, 1.0), 1.0);
    }

    #[test]
    fn two_photon_product_keeps_only_gouy_phase() {
        let b = GaussianBeamParams::from_waist_and_rayleigh(0.3, 2.0).unwrap();
        let r = [0.1, -0.2, 0.7];
        let expect = 2.0 * (0.7f64 / 2.0).atan();
        assert!((b.laser_phase(r) - expect).abs() < 1e-14);
        let w = b.spot_size(0.7);
        let amp = (0.3 / w).powi(2) * (-2.0 * 0.05 / (w * w)).exp();
        assert!((b.coupling_profile(r).norm() - amp).abs() < 1e-14);
        assert!((b.intensity_profile(r) - amp).abs() < 1e-14);
    }
}
