use e1m1_core::{AtomSpecies, Axis, Dimension, GaussianWavepacket, UnitSystem};
use num_complex::Complex64;
use proptest::prelude::*;

const DIMS: [Dimension; 8] = [
    Dimension::MASS,
    Dimension::LENGTH,
    Dimension::TIME,
    Dimension::MOMENTUM,
    Dimension::ACTION,
    Dimension::ENERGY,
    Dimension::WAVENUMBER,
    Dimension::ACCELERATION,
];

proptest! {
    #[test]
    fn unit_round_trip(mass in 1e-27f64..1e-24, omega in 1e-1f64..1e4, length in prop::option::of(1e-3f64..1e2),
                       value in -1e6f64..1e6, d in 0usize..8) {
        let mut b = UnitSystem::builder().mass(mass).angular_frequency(omega);
        if let Some(l) = length { b = b.length(l); }
        let u = b.build().unwrap();
        let back = u.to_si(u.to_internal(value, DIMS[d]), DIMS[d]);
        prop_assert!((back - value).abs() <= 1e-14 * value.abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn species_mass_split(mass in 1e-3f64..1e3, eps in -0.09f64..0.09) {
        let s = AtomSpecies::from_epsilon(mass, eps, 1.0).unwrap();
        let tol = 4.0 * f64::EPSILON * mass;
        prop_assert!(((s.mass_e() - s.mass_g()) - s.delta_mass()).abs() <= tol);
        prop_assert!(((s.mass_e() + s.mass_g()) / 2.0 - s.mass()).abs() <= tol);
    }
}

fn trapezoid(f: impl Fn(f64) -> Complex64, lo: f64, hi: f64, n: usize) -> Complex64 {
    let h = (hi - lo) / n as f64;
    let mut acc = (f(lo) + f(hi)) * 0.5;
    for k in 1..n {
        acc += f(lo + k as f64 * h);
    }
    acc * h
}

#[test]
fn wavepacket_is_normalised() {
    let w = GaussianWavepacket::new([0.3, -1.0, 2.0], [0.7, 1.1, 0.4], [1.0, 0.5, -2.0]).unwrap();
    let mut total = 1.0;
    for a in Axis::ALL {
        let p0 = w.p0()[a.index()];
        let s = w.momentum_width(a);
        let n = trapezoid(|p| Complex64::new(w.amplitude_1d(a, p, 1.0).norm_sqr(), 0.0), p0 - 12.0 * s, p0 + 12.0 * s, 4000);
        total *= n.re;
    }
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn position_width_from_numeric_fourier_transform() {
    let hbar = 1.0;
    let w = GaussianWavepacket::new([0.0; 3], [1.0, 1.0, 0.8], [0.0; 3]).unwrap();
    let s = w.momentum_width(Axis::Z);
    let psi_x = |x: f64| {
        trapezoid(
            |p| w.amplitude_1d(Axis::Z, p, hbar) * Complex64::from_polar(1.0, p * x / hbar),
            -12.0 * s,
            12.0 * s,
            2000,
        ) / (2.0 * std::f64::consts::PI * hbar).sqrt()
    };
    let dz = w.position_width(Axis::Z, hbar);
    let n = 801;
    let (lo, hi) = (-10.0 * dz, 10.0 * dz);
    let h = (hi - lo) / (n - 1) as f64;
    let (mut norm, mut second) = (0.0, 0.0);
    for k in 0..n {
        let x = lo + k as f64 * h;
        let d = psi_x(x).norm_sqr();
        norm += d * h;
        second += d * x * x * h;
    }
    assert!((norm - 1.0).abs() < 1e-9);
    assert!(((second / norm).sqrt() - dz).abs() / dz < 1e-9);
}
