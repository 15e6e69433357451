use e1m1_beam::PulseCoefficients;
use e1m1_core::GaussianWavepacket;
use num_complex::Complex64;

use crate::hamiltonian::{detuning_symbol, quadratic_form_series, window_diagnostic, CommutatorDiagnostic};
use crate::weyl::Symbol;
use crate::PulseError;

/// `int_0^T t^n sin(w t) dt` and `int_0^T t^n cos(w t) dt` for `n = 0, 1, 2`,
/// returned as `[sin; cos]`.
pub fn time_integrals(w: f64, t: f64) -> [[f64; 3]; 2] {
    if w == 0.0 {
        return [[0.0; 3], [t, t * t / 2.0, t * t * t / 3.0]];
    }
    let (s, c) = (w * t).sin_cos();
    let x = w * t;
    [
        [
            (1.0 - c) / w,
            (s - x * c) / (w * w),
            (2.0 * x * s - (x * x - 2.0) * c - 2.0) / (w * w * w),
        ],
        [
            s / w,
            (c + x * s - 1.0) / (w * w),
            ((x * x - 2.0) * s + 2.0 * x * c) / (w * w * w),
        ],
    ]
}

/// Exponent of `U_3(tau) = exp(-i (A_0 + A_x sigma_x + A_y sigma_y + A_z sigma_z))`
/// with dimensionless symbols `A_mu = hbar^-1 int_0^t H_mu dt'`.
///
/// Time ordering is dropped, which is exact to the accuracy of the
/// commutator test.
#[derive(Debug, Clone, PartialEq)]
pub struct U3Exponent {
    pub tau: f64,
    pub duration: f64,
    pub keep_quadratic: bool,
    pub a: [Symbol; 4],
}

impl U3Exponent {
    /// `2x2` matrix (rows final, columns initial, basis `e, g`) obtained by
    /// evaluating the exponent at a phase-space point. When the quadratic
    /// terms are dropped the exponent depends on `P_z` alone and this is the
    /// exact action on a momentum eigenstate.
    pub fn matrix_at(&self, point: [f64; 6]) -> [[Complex64; 2]; 2] {
        let [a0, ax, ay, az] = self.a.clone().map(|s| s.eval(point).re);
        spin_exponential(a0, [ax, ay, az])
    }

    pub fn matrix_at_momentum(&self, p_z: f64) -> [[Complex64; 2]; 2] {
        self.matrix_at([0.0, 0.0, 0.0, 0.0, 0.0, p_z])
    }
}

/// `exp(-i (a0 + a.sigma))` in the basis `(e, g)` with `sigma_z = diag(1, -1)`.
pub(crate) fn spin_exponential(a0: f64, a: [f64; 3]) -> [[Complex64; 2]; 2] {
    let norm = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let (s, c) = norm.sin_cos();
    let sinc = if norm == 0.0 { 1.0 } else { s / norm };
    let i = Complex64::i();
    let [nx, ny, nz] = a.map(|v| v * sinc);
    let g = Complex64::from_polar(1.0, -a0);
    [
        [g * (c - i * nz), g * (-i) * Complex64::new(nx, -ny)],
        [g * (-i) * Complex64::new(nx, ny), g * (c + i * nz)],
    ]
}

/// Evolution operator `U_3(tau)` at pulse area `tau = Omega0 t`.
///
/// With `keep_quadratic` false only the Doppler and constant detuning
/// survive, `exp{-i x/2 [(1 - cos tau) sigma_y + sin tau sigma_z]}` with
/// `x = (nu(P) + D0) / Omega0`. Otherwise every quadratic term of the
/// Heisenberg-frame form is integrated over the pulse in closed form.
pub fn evolve_u3(tau: f64, coeffs: &PulseCoefficients<f64>, keep_quadratic: bool) -> U3Exponent {
    let omega0 = coeffs.omega0();
    let t = tau / omega0;
    let [is, ic] = time_integrals(omega0, t);
    let linear = detuning_symbol(coeffs, &Symbol::zero());
    let mut a = [Symbol::zero(), Symbol::zero(), linear.clone() * (is[0] / 2.0), linear * (ic[0] / 2.0)];
    if keep_quadratic {
        let q = quadratic_form_series(coeffs);
        let area = q[0].clone() * t + q[1].clone() * (t * t / 2.0) + q[2].clone() * (t * t * t / 3.0);
        let dq = coeffs.detuning_quadratic() / 2.0;
        let weighted = |w: &[f64; 3]| q[0].clone() * w[0] + q[1].clone() * w[1] + q[2].clone() * w[2];
        a[0] = area.clone() * (coeffs.omega_ac_plus0() / 2.0);
        a[1] = area * (-omega0 / 2.0);
        a[2] = a[2].clone() + weighted(&is) * dq;
        a[3] = a[3].clone() + weighted(&ic) * dq;
    }
    U3Exponent { tau, duration: t, keep_quadratic, a }
}

/// How `evolve_u3_checked` reacts to a large commutator diagnostic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorPolicy {
    pub threshold: f64,
    pub strict: bool,
    /// Instants sampled across the pulse window.
    pub samples: usize,
}

impl Default for CommutatorPolicy {
    fn default() -> Self {
        Self { threshold: 1e-2, strict: false, samples: 5 }
    }
}

/// `evolve_u3` preceded by the commutator test over the pulse window.
/// Above the threshold a warning is logged, or in strict mode an error is
/// returned.
pub fn evolve_u3_checked(
    tau: f64,
    coeffs: &PulseCoefficients<f64>,
    keep_quadratic: bool,
    psi: &GaussianWavepacket<f64>,
    policy: CommutatorPolicy,
) -> Result<(U3Exponent, CommutatorDiagnostic), PulseError> {
    if !tau.is_finite() {
        return Err(PulseError::InvalidArea(tau));
    }
    let d = window_diagnostic(tau / coeffs.omega0(), policy.samples, psi, coeffs);
    if d.relative > policy.threshold {
        if policy.strict {
            return Err(PulseError::NotQuasiCommuting { value: d.relative, threshold: policy.threshold });
        }
        log::warn!("pulse Hamiltonian commutator diagnostic {:.3e} above {:.3e}", d.relative, policy.threshold);
    }
    Ok((evolve_u3(tau, coeffs, keep_quadratic), d))
}
