use e1m1_beam::PulseCoefficients;
use e1m1_core::GaussianWavepacket;
use num_complex::Complex64;

use crate::weyl::{Symbol, Var};

/// Heisenberg-frame quadratic form `Zs_H^2 + 2 rho_H^2` as a polynomial in
/// `t` with symbol coefficients, `Q(t) = q[0] + q[1] t + q[2] t^2`.
///
/// The trajectories of the mean Hamiltonian are
/// `Z_H = Z + (P_z + hbar k / 2) t / M` and `X_H = X + P_x t / M`.
pub fn quadratic_form_series(coeffs: &PulseCoefficients<f64>) -> [Symbol; 3] {
    let (z_r, w0, m) = (coeffs.beam().rayleigh_length(), coeffs.beam().waist(), coeffs.mass());
    let drift = coeffs.hbar() * coeffs.k() / 2.0;
    let mut q = [Symbol::zero(), Symbol::zero(), Symbol::zero()];
    let axes = [
        (Var::Z, Symbol::var(Var::Pz) + Symbol::constant(drift), 1.0 / (z_r * z_r)),
        (Var::X, Symbol::var(Var::Px), 2.0 / (w0 * w0)),
        (Var::Y, Symbol::var(Var::Py), 2.0 / (w0 * w0)),
    ];
    for (x, v, weight) in axes {
        let x = Symbol::var(x);
        let v = v * (1.0 / m);
        q[0] = q[0].clone() + x.product(&x) * weight;
        q[1] = q[1].clone() + x.product(&v) * (2.0 * weight);
        q[2] = q[2].clone() + v.product(&v) * weight;
    }
    q
}

/// `Q(t)` evaluated at one instant.
pub fn quadratic_form_at(coeffs: &PulseCoefficients<f64>, t: f64) -> Symbol {
    let [q0, q1, q2] = quadratic_form_series(coeffs);
    q0 + q1 * t + q2 * (t * t)
}

/// `H_3(t) = H_0 1 + H_x sigma_x + H_y sigma_y + H_z sigma_z` with every
/// coefficient a real polynomial symbol in the Schroedinger-picture
/// variables.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCoefficientField {
    pub t: f64,
    pub h: [Symbol; 4],
}

impl PauliCoefficientField {
    /// Largest imaginary coefficient across the four symbols; the field is
    /// Hermitian when this vanishes.
    pub fn max_imag(&self) -> f64 {
        self.h.iter().map(Symbol::max_imag).fold(0.0, f64::max)
    }

    /// Coefficient values `(H_0, H_x, H_y, H_z)` at a phase-space point.
    pub fn eval(&self, point: [f64; 6]) -> [f64; 4] {
        self.h.clone().map(|s| s.eval(point).re)
    }

    /// Spin-averaged state norm `sqrt(<sum_mu H_mu^dagger H_mu>)`.
    pub fn norm(&self, psi: &GaussianWavepacket<f64>, hbar: f64) -> f64 {
        pauli_norm(&self.h, psi, hbar)
    }
}

pub(crate) fn pauli_norm(h: &[Symbol; 4], psi: &GaussianWavepacket<f64>, hbar: f64) -> f64 {
    h.iter().map(|s| s.adjoint().star(s, hbar).expectation(psi, hbar).re).sum::<f64>().sqrt()
}

/// Assembles the pulse Hamiltonian of the Rabi-rotating frame:
///
/// * `H_0 = hbar omega_AC^+(0) Q / 2`
/// * `H_x = -hbar Omega0 Q / 2`
/// * `H_y = (hbar / 2) [nu(P) + D0 - omega_AC^-(0) Q] sin(Omega0 t)`
/// * `H_z = (hbar / 2) [nu(P) + D0 - omega_AC^-(0) Q] cos(Omega0 t)`
///
/// with `D0 = omega_k + delta + omega_AC^-(0)`, zero for the compensated
/// detuning.
pub fn assemble_h3(coeffs: &PulseCoefficients<f64>, t: f64) -> PauliCoefficientField {
    let hbar = coeffs.hbar();
    let q = quadratic_form_at(coeffs, t);
    let detuning = detuning_symbol(coeffs, &q);
    let (s, c) = (coeffs.omega0() * t).sin_cos();
    PauliCoefficientField {
        t,
        h: [
            q.clone() * (hbar * coeffs.omega_ac_plus0() / 2.0),
            q * (-hbar * coeffs.omega0() / 2.0),
            detuning.clone() * (hbar * s / 2.0),
            detuning * (hbar * c / 2.0),
        ],
    }
}

/// `Delta_H / hbar = nu(P) + D0 - omega_AC^-(0) Q` for a given `Q` symbol.
pub(crate) fn detuning_symbol(coeffs: &PulseCoefficients<f64>, q: &Symbol) -> Symbol {
    Symbol::var(Var::Pz) * (coeffs.k() / coeffs.mass())
        + Symbol::constant(coeffs.detuning_constant())
        + q.clone() * coeffs.detuning_quadratic()
}

/// Outcome of the different-time commutator test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutatorDiagnostic {
    /// `||[H(t1), H(t2)]|| / (||H(t1)|| ||H(t2)||)`.
    pub relative: f64,
    /// `||[H(t1), H(t2)]|| / (hbar Omega0)^2`.
    pub pulse_scaled: f64,
    pub commutator_norm: f64,
    pub norm_t1: f64,
    pub norm_t2: f64,
}

/// Pauli components of `[A, B]` for `A = a_0 + a.sigma`, `B = b_0 + b.sigma`.
pub(crate) fn pauli_commutator(a: &[Symbol; 4], b: &[Symbol; 4], hbar: f64) -> [Symbol; 4] {
    let mut out = [Symbol::zero(), Symbol::zero(), Symbol::zero(), Symbol::zero()];
    for mu in 0..4 {
        out[0] = out[0].clone() + a[mu].commutator(&b[mu], hbar);
    }
    for j in 1..4 {
        out[j] = out[j].clone() + a[0].commutator(&b[j], hbar) + a[j].commutator(&b[0], hbar);
    }
    let i = Complex64::new(0.0, 1.0);
    for (j, k, l) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        // i eps_jkl {a_j, b_k} sigma_l, with eps_kjl = -eps_jkl
        let term = a[j].anticommutator(&b[k], hbar) - a[k].anticommutator(&b[j], hbar);
        out[l] = out[l].clone() + term.scale(i);
    }
    out
}

/// Different-time commutator `[H_3(t1), H_3(t2)]` measured in the state
/// `psi` with spin-averaged norms.
pub fn commutator_diagnostic(
    t1: f64,
    t2: f64,
    psi: &GaussianWavepacket<f64>,
    coeffs: &PulseCoefficients<f64>,
) -> CommutatorDiagnostic {
    let hbar = coeffs.hbar();
    let h1 = assemble_h3(coeffs, t1);
    let h2 = assemble_h3(coeffs, t2);
    let c = pauli_commutator(&h1.h, &h2.h, hbar);
    let commutator_norm = pauli_norm(&c, psi, hbar);
    let (norm_t1, norm_t2) = (h1.norm(psi, hbar), h2.norm(psi, hbar));
    let scale = hbar * coeffs.omega0();
    let relative = if commutator_norm == 0.0 { 0.0 } else { commutator_norm / (norm_t1 * norm_t2) };
    CommutatorDiagnostic { relative, pulse_scaled: commutator_norm / (scale * scale), commutator_norm, norm_t1, norm_t2 }
}

/// Largest diagnostic over pairs of instants sampled across `[0, duration]`.
pub fn window_diagnostic(
    duration: f64,
    samples: usize,
    psi: &GaussianWavepacket<f64>,
    coeffs: &PulseCoefficients<f64>,
) -> CommutatorDiagnostic {
    let n = samples.max(2);
    let times: Vec<f64> = (0..n).map(|i| duration * i as f64 / (n - 1) as f64).collect();
    let mut worst = commutator_diagnostic(0.0, 0.0, psi, coeffs);
    for (i, &t1) in times.iter().enumerate() {
        for &t2 in &times[i + 1..] {
            let d = commutator_diagnostic(t1, t2, psi, coeffs);
            if d.relative > worst.relative || (d.relative == worst.relative && d.pulse_scaled > worst.pulse_scaled) {
                worst = CommutatorDiagnostic { pulse_scaled: d.pulse_scaled.max(worst.pulse_scaled), ..d };
            } else {
                worst.pulse_scaled = worst.pulse_scaled.max(d.pulse_scaled);
            }
        }
    }
    worst
}
