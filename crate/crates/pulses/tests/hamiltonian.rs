use e1m1_beam::{Beam, PulseCoefficients};
use e1m1_core::GaussianWavepacket;
use e1m1_pulses::{assemble_h3, commutator_diagnostic, evolve_u3};
use num_complex::Complex64;
use proptest::prelude::*;

type M2 = [[Complex64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn dagger(a: &M2) -> M2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn rabi_frame(omega0: f64, t: f64) -> M2 {
    let (s, c) = (omega0 * t / 2.0).sin_cos();
    [[c.into(), Complex64::new(0.0, -s)], [Complex64::new(0.0, -s), c.into()]]
}

/// Pauli decomposition `(h0, hx, hy, hz)` of a Hermitian 2x2 matrix, with
/// the basis ordered `(e, g)`.
fn pauli(a: &M2) -> [f64; 4] {
    [
        ((a[0][0] + a[1][1]) / 2.0).re,
        ((a[0][1] + a[1][0]) / 2.0).re,
        ((a[1][0] - a[0][1]) / Complex64::new(0.0, 2.0)).re,
        ((a[0][0] - a[1][1]) / 2.0).re,
    ]
}

/// Pulse Hamiltonian at a phase-space point rebuilt from the position
/// dependent couplings before the Rabi rotation is removed: the Rabi frame
/// `U_Omega = exp(-i Omega0 t sigma_x / 2)` is applied numerically and its
/// generator is obtained by finite differences.
fn frame_chain(pc: &PulseCoefficients<f64>, point: [f64; 6], t: f64) -> [f64; 4] {
    let hbar = pc.hbar();
    let m = pc.mass();
    let z = point[4] + pc.drift_velocity(point[5]) * t;
    let x = point[0] + point[1] * t / m;
    let y = point[2] + point[3] * t / m;
    let rho = (x * x + y * y).sqrt();
    let omega = pc.omega_h(z, rho);
    let delta = pc.detuning_h(point[5], z, rho);
    let stark = pc.stark_h(z, rho);
    let h2: M2 = [
        [Complex64::new(hbar * (delta / 2.0 - stark), 0.0), Complex64::new(hbar * omega / 2.0, 0.0)],
        [Complex64::new(hbar * omega / 2.0, 0.0), Complex64::new(hbar * (-delta / 2.0 - stark), 0.0)],
    ];
    let u = rabi_frame(pc.omega0(), t);
    let dt = 1e-5 / pc.omega0();
    let up = rabi_frame(pc.omega0(), t + dt);
    let um = rabi_frame(pc.omega0(), t - dt);
    let mut udot = up;
    for i in 0..2 {
        for j in 0..2 {
            udot[i][j] = (up[i][j] - um[i][j]) / (2.0 * dt);
        }
    }
    let mut h3 = mul(&dagger(&u), &mul(&h2, &u));
    let gen = mul(&dagger(&u), &udot);
    for i in 0..2 {
        for j in 0..2 {
            h3[i][j] -= Complex64::new(0.0, hbar) * gen[i][j];
        }
    }
    pauli(&h3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pulse_hamiltonian_matches_frame_chain(
        w0 in 0.2..3.0f64,
        z_r in 0.5..20.0f64,
        plus in -2.0..2.0f64,
        minus in -2.0..2.0f64,
        delta in -1.0..1.0f64,
        t in 0.0..6.0f64,
        point in prop::array::uniform6(-0.5..0.5f64),
    ) {
        let beam = Beam::from_waist_and_rayleigh(w0, z_r).unwrap();
        let pc = PulseCoefficients::from_rates(beam, 1.3, 0.8, 1.1, plus, minus, delta);
        let direct = assemble_h3(&pc, t).eval(point);
        let chain = frame_chain(&pc, point, t);
        for mu in 0..4 {
            prop_assert!((direct[mu] - chain[mu]).abs() < 1e-7 * (1.0 + chain[mu].abs()), "{mu}: {direct:?} vs {chain:?}");
        }
    }
}

/// Time-ordered propagation of the momentum-only pulse Hamiltonian with
/// classical RK4.
fn rk4_u3(pc: &PulseCoefficients<f64>, p_z: f64, t_end: f64, steps: usize) -> M2 {
    let x = pc.doppler(p_z) + pc.detuning_constant();
    let rhs = |t: f64, v: &M2| -> M2 {
        let (s, c) = (pc.omega0() * t).sin_cos();
        // H/hbar = x/2 (sin sigma_y + cos sigma_z)
        let h: M2 = [
            [Complex64::new(x * c / 2.0, 0.0), Complex64::new(0.0, -x * s / 2.0)],
            [Complex64::new(0.0, x * s / 2.0), Complex64::new(-x * c / 2.0, 0.0)],
        ];
        mul(&h, v).map(|row| row.map(|e| e * Complex64::new(0.0, -1.0)))
    };
    let add = |a: &M2, b: &M2, f: f64| -> M2 {
        let mut o = *a;
        for i in 0..2 {
            for j in 0..2 {
                o[i][j] += b[i][j] * f;
            }
        }
        o
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut v: M2 = [[one, zero], [zero, one]];
    let h = t_end / steps as f64;
    for n in 0..steps {
        let t = n as f64 * h;
        let k1 = rhs(t, &v);
        let k2 = rhs(t + h / 2.0, &add(&v, &k1, h / 2.0));
        let k3 = rhs(t + h / 2.0, &add(&v, &k2, h / 2.0));
        let k4 = rhs(t + h, &add(&v, &k3, h));
        for i in 0..2 {
            for j in 0..2 {
                v[i][j] += (k1[i][j] + k2[i][j] * 2.0 + k3[i][j] * 2.0 + k4[i][j]) * (h / 6.0);
            }
        }
    }
    v
}

#[test]
fn evolution_matches_time_ordered_propagation() {
    let beam = Beam::from_waist_and_rayleigh(1e-3, 5.0).unwrap();
    let pc = PulseCoefficients::from_rates(beam, 1.0, 1.0, 500.0, 30.0, 10.0, 0.0).compensated();
    for tau in [std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 5.0] {
        // Doppler shifts up to 5e-3 Omega0; the dropped time ordering
        // enters at second order in nu / Omega0
        for p_z in [-6.0, -0.5, 0.0, 3.0, 6.25] {
            let exact = rk4_u3(&pc, p_z, tau / pc.omega0(), 4000);
            let u = evolve_u3(tau, &pc, false).matrix_at_momentum(p_z);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((exact[i][j] - u[i][j]).norm() < 1e-4, "tau {tau}, p {p_z}: {:?} vs {:?}", exact, u);
                }
            }
        }
    }
}

#[test]
fn time_ordering_error_is_second_order() {
    let beam = Beam::from_waist_and_rayleigh(1e-3, 5.0).unwrap();
    let pc = PulseCoefficients::from_rates(beam, 1.0, 1.0, 500.0, 0.0, 0.0, 0.0).compensated();
    let err = |p_z: f64| {
        let exact = rk4_u3(&pc, p_z, 5.0 / pc.omega0(), 4000);
        let u = evolve_u3(5.0, &pc, false).matrix_at_momentum(p_z);
        (exact[1][0] - u[1][0]).norm()
    };
    let ratio = err(8.0) / err(4.0);
    assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
}

#[test]
fn quadratic_exponent_matches_midpoint_integration() {
    let beam = Beam::from_waist_and_rayleigh(0.7, 3.0).unwrap();
    let pc = PulseCoefficients::from_rates(beam, 1.0, 1.0, 2.0, 0.5, 0.3, 0.1);
    let tau = 2.3;
    let t = tau / pc.omega0();
    let u = evolve_u3(tau, &pc, true);
    let point = [0.05, 0.2, -0.1, 0.1, 0.3, -0.4];
    let n = 20_000;
    let mut acc = [0.0; 4];
    for i in 0..n {
        let s = (i as f64 + 0.5) * t / n as f64;
        let h = assemble_h3(&pc, s).eval(point);
        for mu in 0..4 {
            acc[mu] += h[mu] * t / n as f64 / pc.hbar();
        }
    }
    for mu in 0..4 {
        let a = u.a[mu].eval(point).re;
        assert!((a - acc[mu]).abs() < 1e-8, "{mu}: {a} vs {}", acc[mu]);
    }
}

#[test]
fn diagnostic_is_antisymmetric_in_time_and_grows_with_separation() {
    let beam = Beam::from_waist_and_rayleigh(0.5, 2.0).unwrap();
    let pc = PulseCoefficients::from_rates(beam, 1.0, 1.0, 1.0, 0.4, 0.2, 0.0).compensated();
    let psi = GaussianWavepacket::new([0.0, 0.0, 0.05], [1.0; 3], [0.0; 3]).unwrap();
    let a = commutator_diagnostic(0.3, 1.1, &psi, &pc);
    let b = commutator_diagnostic(1.1, 0.3, &psi, &pc);
    assert!((a.commutator_norm - b.commutator_norm).abs() < 1e-12 * a.commutator_norm);
    assert!(a.relative > 0.0);
    let near = commutator_diagnostic(0.3, 0.31, &psi, &pc);
    assert!(near.commutator_norm < a.commutator_norm);
}
