use std::f64::consts::PI;

use e1m1_beam::{Beam, PulseCoefficients};
use e1m1_core::{AtomSpecies, GaussianWavepacket, InternalState};
use e1m1_interferometer::*;

const G: f64 = 0.7;
const KP: f64 = 3.0;
const DT: f64 = 0.5;
const SIGMA_P: f64 = 0.5;

fn coeffs(z_r: f64, omega0: f64) -> PulseCoefficients<f64> {
    let beam = Beam::from_waist_and_rayleigh(1.0, z_r).unwrap();
    PulseCoefficients::from_rates(beam, 1.0, 1.0, omega0, 0.3, 0.1, 0.0).compensated()
}

fn setup(eps: f64, g: f64, z_r: f64, omega0: f64) -> Setup {
    let species = AtomSpecies::from_epsilon(1.0, eps, 1.0).unwrap();
    let psi = GaussianWavepacket::new([0.0; 3], [SIGMA_P; 3], [0.0; 3]).unwrap();
    Setup::new(species, g, psi, coeffs(z_r, omega0)).unwrap()
}

fn scheme_a(omega0: f64, tau: f64) -> SchemeASequence {
    SchemeASequence::new(0.0, DT, 1.2, 3.0, PI / 2.0 / omega0, KP, tau).unwrap()
}

fn scheme_b(t_pi: f64, state: InternalState) -> SchemeBSequence {
    SchemeBSequence::symmetric(0.0, DT, 3.0, t_pi, KP, state).unwrap()
}

#[test]
fn scheme_a_without_gravity_or_defect_only_sees_the_kick() {
    let s = setup(0.0, 0.0, 4.0, 50.0);
    let o = scheme_a_observables(&scheme_a(50.0, 0.0), &s).unwrap();
    let k = s.coeffs.k();
    assert!(o.delta_phi_g.abs() < 1e-12, "{}", o.delta_phi_g);
    assert!((o.delta_phi_e + k * KP * DT).abs() < 1e-12, "{}", o.delta_phi_e);
    assert!((o.v_g - 1.0).abs() < 1e-13 && (o.v_e - 1.0).abs() < 1e-13);
}

#[test]
fn scheme_a_phases_follow_the_first_order_expressions() {
    let seq = scheme_a(50.0, 0.4);
    let residuals = |eps: f64| {
        let s = setup(eps, G, 4.0, 50.0);
        let o = scheme_a_observables(&seq, &s).unwrap();
        let p = scheme_a_prediction(&seq, &s);
        [o.delta_phi_g - p.delta_phi_g, o.delta_phi_e - p.delta_phi_e, o.delta_phi_minus - p.delta_phi_minus]
    };
    for r in residuals(1e-4) {
        assert!(r.abs() < 1e-7, "{r}");
    }
    let (full, half) = (residuals(0.08), residuals(0.04));
    for i in 0..3 {
        let ratio = residual_ratio(full[i], half[i]);
        assert!((ratio - 4.0).abs() < 0.5, "phase {i}: ratio {ratio} from {} and {}", full[i], half[i]);
    }
}

#[test]
fn double_differential_isolates_the_redshift() {
    let expected = |tau: f64| -G * KP * DT * tau;
    for (z_r, omega0) in [(4.0, 50.0), (8.0, 50.0), (4.0, 25.0)] {
        let seq = scheme_a(omega0, 0.4);
        let r = richardson(|e| double_differential(&seq, &setup(e, G, z_r, omega0)), 1e-3).unwrap();
        let rel = (r.slope - expected(0.4)).abs() / expected(0.4).abs();
        assert!(rel < 1e-6, "z_R {z_r}, Omega0 {omega0}: slope {} vs {}", r.slope, expected(0.4));
        assert!(r.at_zero.abs() < 1e-12);
    }
}

// The engine keeps the exact 1/(M_g M_e) in the branch displacement, so the
// first-order exponent is only reproduced to a relative eps^2 of itself.
#[test]
fn scheme_a_visibilities() {
    let seq = scheme_a(50.0, 0.0);
    for (eps, sigma_p) in [(1e-4, 3000.0), (1e-4, 1000.0), (3e-5, 10000.0)] {
        let s = setup(eps, G, 4.0, 50.0);
        let s = Setup { psi: GaussianWavepacket::new([0.0; 3], [sigma_p; 3], [0.0; 3]).unwrap(), ..s };
        let o = scheme_a_observables(&seq, &s).unwrap();
        let p = scheme_a_prediction(&seq, &s);
        assert!(p.v_e < 0.999);
        assert!((o.v_g - 1.0).abs() < 1e-12, "{}", o.v_g);
        assert!((o.v_e - p.v_e).abs() < 1e-9 * p.v_e, "{} vs {}", o.v_e, p.v_e);
        assert!(o.leakage >= -1e-12 && o.leakage <= 1.0);
    }
}

#[test]
fn pair_terms_come_in_conjugate_pairs() {
    let s = setup(0.05, G, 4.0, 50.0);
    let o = scheme_a_observables(&scheme_a(50.0, 0.0), &s).unwrap();
    for r in [&o.ground, &o.excited] {
        let total: f64 = r.pairs.iter().map(|p| p.contribution).sum();
        assert!((total - r.intensity).abs() < 1e-14);
        for p in &r.pairs {
            let twin = r.pairs.iter().find(|q| q.l == p.m && q.m == p.l).expect("swapped pair");
            assert!((p.contribution - twin.contribution).abs() < 1e-14);
            assert!((p.visibility - twin.visibility).abs() < 1e-12);
            if p.l != p.m {
                let s = p.phase + p.weight.arg() + twin.phase + twin.weight.arg();
                assert!((s / (2.0 * PI)).round() * 2.0 * PI - s < 1e-9);
            }
        }
    }
}

#[test]
fn scheme_b_ground_run_at_zero_defect_is_exact() {
    let t_pi = PI / 50.0;
    let s = setup(0.0, G, 4.0, 50.0);
    let seq = scheme_b(t_pi, InternalState::Ground);
    let r = exit_port_intensity(&build_scheme_b(&seq, &s).unwrap(), &s.psi);
    let p = scheme_b_prediction(&seq, &s);
    assert!((r.delta_phi - p.delta_phi_g).abs() < 1e-10, "{} vs {}", r.delta_phi, p.delta_phi_g);
    assert_eq!(r.port, InternalState::Ground);
    assert!((r.visibility - 1.0).abs() < 1e-12);
}

// The kick of the pulse starting with the relaunch acts on branches that are
// already closing, so the excited run keeps 2 hbar k k_p t_pi / M.
#[test]
fn scheme_b_excited_run_keeps_a_pulse_time_kick_term() {
    for omega0 in [50.0, 100.0] {
        let t_pi = PI / omega0;
        for z_r in [4.0, 8.0] {
            let s = setup(0.0, G, z_r, omega0);
            let seq = scheme_b(t_pi, InternalState::Excited);
            let o = scheme_b_observables(&seq, &s).unwrap();
            let p = scheme_b_prediction(&seq, &s);
            let extra = 2.0 * s.coeffs.k() * KP * t_pi;
            assert!((o.delta_phi_e - p.delta_phi_e - extra).abs() < 1e-9, "{}", o.delta_phi_e - p.delta_phi_e);
        }
    }
}

// With the mean mass during the pulses the state changes effectively take
// place half way through them, which shortens the lever of the velocity
// jumps by about t_pi / 2 each.
#[test]
fn scheme_b_defect_slope_deficit_scales_with_the_pulse_time() {
    let deficit = |omega0: f64| {
        let t_pi = PI / omega0;
        let seq = scheme_b(t_pi, InternalState::Ground);
        let r = richardson(|e| scheme_b_observables(&seq, &setup(e, G, 1e9, omega0)).map(|o| o.delta_phi_minus), 1e-4).unwrap();
        (4.0 * G * KP * 3.0 * DT - r.slope) / (2.0 * G * KP * t_pi * (3.0 + DT))
    };
    let (a, b) = (deficit(100.0), deficit(400.0));
    assert!((a - 1.0).abs() < 0.02 && (b - 1.0).abs() < 0.005, "{a} {b}");
}

#[test]
fn scheme_b_short_pulses_reproduce_sum_and_difference() {
    let omega0 = 1e8;
    let t_pi = PI / omega0;
    let seq = scheme_b(t_pi, InternalState::Ground);
    let s = setup(0.0, G, 4.0, omega0);
    let p = scheme_b_prediction(&seq, &s);
    let o = scheme_b_observables(&seq, &s).unwrap();
    assert!((o.delta_phi_plus - p.delta_phi_plus).abs() < 1e-6 * p.delta_phi_plus);
    let r = richardson(|e| scheme_b_observables(&seq, &setup(e, G, 4.0, omega0)).map(|o| o.delta_phi_minus), 1e-4).unwrap();
    let slope = 4.0 * G * KP * 3.0 * DT;
    assert!((r.slope - slope).abs() < 1e-6 * slope, "{}", r.slope);
    // doubling the kick leaves the single-run phases alone
    let doubled = scheme_b_observables(&seq, &setup(0.0, G, 2.0, omega0)).unwrap();
    for (x, y) in [(o.delta_phi_g, doubled.delta_phi_g), (o.delta_phi_e, doubled.delta_phi_e)] {
        assert!((x - y).abs() < 1e-6 * x.abs());
    }
}

#[test]
fn setup_rejects_mismatched_pulse_mass() {
    let species = AtomSpecies::from_epsilon(2.0, 0.0, 1.0).unwrap();
    let psi = GaussianWavepacket::isotropic(SIGMA_P).unwrap();
    let err = Setup::new(species, G, psi, coeffs(4.0, 50.0)).unwrap_err();
    assert!(matches!(err, InterferometerError::MassMismatch { .. }));
}

#[test]
fn sequence_must_match_the_pulse_area() {
    let s = setup(0.0, G, 4.0, 50.0);
    let seq = scheme_a(60.0, 0.0);
    assert!(matches!(build_scheme_a(&seq, &s), Err(InterferometerError::Timing(_))));
}

#[test]
fn clock_mach_zehnder_conserves_probability_for_a_wide_beam() {
    let c = coeffs(1e9, 50.0);
    let psi = GaussianWavepacket::isotropic(SIGMA_P).unwrap();
    for gap in [0.0, 0.3, 1.0] {
        let [g, e] = clock_mach_zehnder(&c, gap, false).unwrap();
        let (pg, pe) = (exit_port_intensity(&g, &psi).intensity, exit_port_intensity(&e, &psi).intensity);
        assert!((pg + pe - 1.0).abs() < 1e-9, "gap {gap}: {pg} + {pe}");
    }
    assert!(clock_mach_zehnder(&c, -1.0, false).is_err());
}
