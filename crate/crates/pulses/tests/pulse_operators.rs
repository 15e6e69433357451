use std::f64::consts::FRAC_1_SQRT_2;

use e1m1_beam::{Beam, PulseCoefficients};
use e1m1_core::InternalState::{self, Excited, Ground};
use e1m1_pulses::{generalized_pulse, PulseKind, PulseOperatorBranches, PulseOptions};
use num_complex::Complex64;
use proptest::prelude::*;

fn coeffs(z_r: f64) -> PulseCoefficients<f64> {
    let beam = Beam::from_waist_and_rayleigh(1e-3, z_r).unwrap();
    PulseCoefficients::from_rates(beam, 1.0, 1.0, 500.0, 30.0, 10.0, 0.0).compensated()
}

fn splitting(on: bool) -> PulseOptions {
    PulseOptions { splitting: on, ..Default::default() }
}

fn ideal(kind: PulseKind) -> [[Complex64; 2]; 2] {
    let i = Complex64::i();
    match kind {
        PulseKind::Pi => [[0.0.into(), -i], [-i, 0.0.into()]],
        PulseKind::PiHalf => [[FRAC_1_SQRT_2.into(), -i * FRAC_1_SQRT_2], [-i * FRAC_1_SQRT_2, FRAC_1_SQRT_2.into()]],
    }
}

fn max_deviation(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst: f64 = 0.0;
    for f in 0..2 {
        for i in 0..2 {
            worst = worst.max((a[f][i] - b[f][i]).norm());
        }
    }
    worst
}

#[test]
fn plane_wave_limit_gives_ideal_matrices() {
    for kind in [PulseKind::Pi, PulseKind::PiHalf] {
        for on in [false, true] {
            let u = generalized_pulse(kind, &coeffs(1e12), splitting(on));
            for p in [-30.0, 0.0, 4.0, 55.0] {
                let m = u.internal_matrix([0.0, 0.0, p]);
                assert!(max_deviation(&m, &ideal(kind)) < 1e-10, "{kind} splitting {on} p {p}: {m:?}");
            }
        }
    }
}

#[test]
fn ground_column_is_the_rabi_rotation() {
    // constant Rabi-frame Hamiltonian (Omega0 sigma_x + nu sigma_z)/2; the
    // generalized pulse drops time ordering only at second order in nu/Omega0
    let pc = coeffs(0.5);
    for kind in [PulseKind::Pi, PulseKind::PiHalf] {
        let u = generalized_pulse(kind, &pc, splitting(true));
        for p in [-10.0, 8.0, 12.0] {
            let nu = pc.doppler(p);
            let x = nu / pc.omega0();
            let w = (pc.omega0().powi(2) + nu * nu).sqrt();
            let t = u.duration;
            let (s, c) = (w * t / 2.0).sin_cos();
            let i = Complex64::i();
            let rabi = [c + i * s * nu / w, -i * s * pc.omega0() / w];
            let m = u.internal_matrix([0.0, 0.0, p]);
            let got = [m[1][1], m[0][1]];
            // magnitudes and phases of a sign-flipped Doppler term would differ at first order
            assert!(x.abs() > 0.04);
            assert!((got[0] - rabi[0]).norm() < 2.0 * x * x, "{kind} p {p}: {got:?} vs {rabi:?}");
            assert!((got[1] - rabi[1]).norm() < 2.0 * x * x, "{kind} p {p}: {got:?} vs {rabi:?}");
        }
    }
}

#[test]
fn excited_cell_of_pi_pulse_splits_into_half_weights() {
    let pc = coeffs(5.0);
    let u = generalized_pulse(PulseKind::Pi, &pc, splitting(true));
    let cell = u.cell(Excited, Excited);
    assert_eq!(cell.len(), 2);
    let xi = pc.hbar() * pc.k() / (pc.mass() * pc.omega0());
    for br in cell {
        assert!((br.weight.norm() - 0.5).abs() < 1e-15);
        assert!(br.op.b()[2].abs() < 1e-20, "net momentum change {}", br.op.b()[2]);
    }
    assert!((cell[0].op.c()[2] - cell[1].op.c()[2] + 2.0 * xi).abs() < 1e-15 * xi.max(1e-300) + 1e-30);
}

#[test]
fn transitions_carry_two_hbar_over_rayleigh_length() {
    for z_r in [1.0, 5.0, 40.0] {
        let u = generalized_pulse(PulseKind::Pi, &coeffs(z_r), splitting(false));
        let (q, _) = u.momentum_amplitude(Excited, Ground, [0.0, 0.0, 0.3]);
        assert!(((q[2] - 0.3) - 2.0 / z_r).abs() < 1e-14);
        let (q, _) = u.momentum_amplitude(Ground, Excited, [0.0, 0.0, 0.3]);
        assert!(((0.3 - q[2]) - 2.0 / z_r).abs() < 1e-14);
    }
}

#[test]
fn half_pulse_without_splitting_is_the_small_argument_limit() {
    // with nu -> 0 the split form collapses onto the single-branch cells
    let pc = coeffs(1e9);
    let split = generalized_pulse(PulseKind::PiHalf, &pc, splitting(true));
    let plain = generalized_pulse(PulseKind::PiHalf, &pc, splitting(false));
    for p in [-3.0, 0.0, 2.0] {
        let a = split.internal_matrix([0.0, 0.0, p]);
        let b = plain.internal_matrix([0.0, 0.0, p]);
        assert!(max_deviation(&a, &b) < 1e-9);
    }
    // and the single-branch weights are the ideal matrix
    for (f, to) in [Excited, Ground].into_iter().enumerate() {
        for (i, from) in [Excited, Ground].into_iter().enumerate() {
            let cell = plain.cell(to, from);
            assert_eq!(cell.len(), 1);
            assert!((cell[0].weight - ideal(PulseKind::PiHalf)[f][i]).norm() < 1e-15);
        }
    }
}

fn deviation_at_rest(z_r: f64, kind: PulseKind) -> f64 {
    let u = generalized_pulse(kind, &coeffs(z_r), splitting(true));
    max_deviation(&u.internal_matrix([0.0; 3]), &ideal(kind))
}

#[test]
fn convergence_rates_in_rayleigh_length() {
    // kicks scale as 1/z_R; at rest the Doppler argument of an excited input
    // is the recoil -hbar k^2 / (M Omega0), so cell deviations scale as 1/z_R^2
    for kind in [PulseKind::Pi, PulseKind::PiHalf] {
        let r = deviation_at_rest(100.0, kind) / deviation_at_rest(200.0, kind);
        assert!((r - 4.0).abs() < 0.05, "{kind}: {r}");
    }
    let a = generalized_pulse(PulseKind::Pi, &coeffs(3.0), splitting(false));
    let b = generalized_pulse(PulseKind::Pi, &coeffs(6.0), splitting(false));
    let ka = a.cell(Excited, Ground)[0].op.b()[2];
    let kb = b.cell(Excited, Ground)[0].op.b()[2];
    assert!((ka / kb - 2.0).abs() < 1e-14);
}

#[test]
fn light_shift_phase_is_common_to_all_cells() {
    let u = generalized_pulse(PulseKind::PiHalf, &coeffs(1e12), splitting(false));
    let phase = |to: InternalState, from: InternalState| u.cell(to, from)[0].op.phase().get("mean");
    let reference = u.reference().phase().get("mean");
    assert!(reference != 0.0);
    for to in [Excited, Ground] {
        for from in [Excited, Ground] {
            assert_eq!(phase(to, from), reference);
        }
    }
}

fn total_probability(u: &PulseOperatorBranches, from: InternalState, p: f64) -> f64 {
    u.transfer_norm(from, [0.0, 0.0, p])
}

proptest! {
    #[test]
    fn probability_is_conserved_with_splitting(
        p in -200.0..200.0f64,
        z_r in 0.05..50.0f64,
        half in any::<bool>(),
        excited in any::<bool>(),
        translation in any::<bool>(),
        g in 0.0..10.0f64,
    ) {
        let kind = if half { PulseKind::PiHalf } else { PulseKind::Pi };
        let from = if excited { Excited } else { Ground };
        let opts = PulseOptions { splitting: true, keep_translation: translation, gravity: g };
        let u = generalized_pulse(kind, &coeffs(z_r), opts);
        prop_assert!((total_probability(&u, from, p) - 1.0).abs() < 1e-10);
    }
}
