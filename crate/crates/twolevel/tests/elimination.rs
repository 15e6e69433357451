use e1m1_core::{GaussianWavepacket, InternalState};
use e1m1_polarization::CouplingSet;
use e1m1_twolevel::{
    adiabaticity, bloch_residual, projector_expansion, rabi_populations, EffectiveTwoLevel, Kinematics, TestState,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn kin() -> Kinematics<f64> {
    Kinematics { mass: 1.0, hbar: 1.0, k_l: 0.05 }
}

fn states() -> Vec<TestState<f64>> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::new();
    for (p0, w) in [(0.0, 0.05), (0.1, 0.2), (-0.2, 0.3)] {
        let psi = GaussianWavepacket::new([0.0, 0.0, p0], [1.0, 1.0, w], [0.0; 3]).unwrap();
        for spinor in [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(0.0, s)],
        ] {
            out.push(TestState::coherent(&psi, spinor, &kin(), 6));
        }
    }
    out
}

#[test]
fn first_order_leaves_only_second_order_residual() {
    for (oe, ob, delta, det) in [(8.0, 6.0, 100.0, 3.0), (5.0, 5.0, 100.0, 0.0), (10.0, 4.0, 150.0, -8.0)] {
        let c = CouplingSet::doppler_free(Complex64::new(oe, 0.0), Complex64::new(ob, 0.0), delta, det);
        let psi = GaussianWavepacket::new([0.0, 0.0, 0.2], [0.2; 3], [0.0; 3]).unwrap();
        let a = adiabaticity(&c, &psi, &kin()).unwrap();
        assert!(a.max() <= 0.1);
        let terms = projector_expansion(&c, &kin(), 1).unwrap();
        for st in states() {
            let r0 = bloch_residual(&terms[..1], &c, &kin(), &st);
            let r1 = bloch_residual(&terms, &c, &kin(), &st);
            assert!(r0 <= 2.0 * a.max(), "r0 {r0} eps {}", a.max());
            // what is left after Pi_1 is the Pi Omega Pi back-action, of order Omega^2/Delta^2
            let second = (oe * oe + ob * ob) / (delta * delta);
            assert!(r1 <= 2.0 * second, "r1 {r1} second order {second}");
        }
    }
}

#[test]
fn residual_drops_with_each_order_when_detuned() {
    let c = CouplingSet::doppler_free(Complex64::new(6.0, 0.0), Complex64::new(5.0, 1.0), 100.0, 6.0);
    let terms = projector_expansion(&c, &kin(), 3).unwrap();
    let st = &states()[0];
    let r: Vec<f64> = (1..=4).map(|n| bloch_residual(&terms[..n], &c, &kin(), st)).collect();
    for w in r.windows(2) {
        assert!(w[1] < w[0], "{r:?}");
    }
}

#[test]
fn first_order_term_vanishes_for_narrow_packet_at_rest() {
    let c = CouplingSet::doppler_free(Complex64::new(6.0, 0.0), Complex64::new(5.0, 0.0), 100.0, 0.0);
    let terms = projector_expansion(&c, &kin(), 1).unwrap();
    let psi = GaussianWavepacket::new([0.0; 3], [1.0, 1.0, 1e-6], [0.0; 3]).unwrap();
    let st = TestState::coherent(&psi, [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], &kin(), 4);
    // Pi_1 contributes only through the kinetic energy of the packet
    let with = bloch_residual(&terms, &c, &kin(), &st);
    let without = bloch_residual(&terms[..1], &c, &kin(), &st);
    assert!((with - without).abs() < 1e-9);
}

#[test]
fn kinetic_moment_matches_quadrature() {
    let psi = GaussianWavepacket::new([0.3, -0.1, 0.2], [0.4, 0.6, 0.8], [0.0; 3]).unwrap();
    let mut sum = 0.0;
    for axis in e1m1_core::Axis::ALL {
        let i = axis.index();
        let n = 20_000;
        let (lo, hi) = (psi.p0()[i] - 12.0 * 0.8, psi.p0()[i] + 12.0 * 0.8);
        let dp = (hi - lo) / n as f64;
        for j in 0..=n {
            let p = lo + j as f64 * dp;
            let w = if j == 0 || j == n { 0.5 } else { 1.0 };
            sum += w * dp * p * p * psi.amplitude_1d(axis, p, 1.0).norm_sqr();
        }
    }
    assert!((sum - psi.mean_p_squared()).abs() < 1e-12);
}

proptest! {
    #[test]
    fn populations_sum_to_one(t in 0.0..100.0f64, re in -2.0..2.0f64, im in -2.0..2.0f64, g in -3.0..3.0f64) {
        let h = EffectiveTwoLevel::resonant_with(Complex64::new(re, im), g);
        for init in [InternalState::Ground, InternalState::Excited] {
            let (pe, pg) = rabi_populations(t, &h, init).unwrap();
            prop_assert!((pe + pg - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn detuning_trades_amplitude_for_frequency(w in 0.1..2.0f64, g1 in 0.0..3.0f64, dg in 0.01..3.0f64) {
        let a = EffectiveTwoLevel::resonant_with(Complex64::new(w, 0.0), g1);
        let b = EffectiveTwoLevel::resonant_with(Complex64::new(w, 0.0), g1 + dg);
        prop_assert!(b.omega_eff() > a.omega_eff());
        prop_assert!(b.amplitude() < a.amplitude());
        let c = EffectiveTwoLevel::resonant_with(Complex64::new(w, 0.0), -(g1 + dg));
        prop_assert_eq!(c.omega_eff(), b.omega_eff());
    }
}

