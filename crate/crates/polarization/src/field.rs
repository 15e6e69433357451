use std::fmt;

use e1m1_core::{lit, Real};
use num_complex::Complex;

use crate::PolarizationError;

/// Complex Cartesian three-vector.
pub type CVec3<T> = [Complex<T>; 3];

/// Spherical unit vector `e_q` for `q` in `{-1, 0, +1}`.
pub fn spherical<T: Real>(q: i32) -> CVec3<T> {
    let s = T::FRAC_1_SQRT_2();
    let z = T::zero();
    match q {
        1 => [Complex::new(-s, z), Complex::new(z, -s), Complex::new(z, z)],
        -1 => [Complex::new(s, z), Complex::new(z, -s), Complex::new(z, z)],
        0 => [Complex::new(z, z), Complex::new(z, z), Complex::new(T::one(), z)],
        _ => panic!("spherical index {q} outside -1..=1"),
    }
}

/// Bilinear dot product, no conjugation.
pub fn dot<T: Real>(u: &CVec3<T>, v: &CVec3<T>) -> Complex<T> {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn conj<T: Real>(v: &CVec3<T>) -> CVec3<T> {
    v.map(|c| c.conj())
}

pub(crate) fn norm<T: Real>(v: &CVec3<T>) -> T {
    (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()).sqrt()
}

fn z_cross<T: Real>(sign: T, v: &CVec3<T>) -> CVec3<T> {
    [-v[1] * sign, v[0] * sign, Complex::new(T::zero(), T::zero())]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    PlusZ,
    MinusZ,
}

impl Direction {
    pub fn sign<T: Real>(self) -> T {
        match self {
            Direction::PlusZ => T::one(),
            Direction::MinusZ => -T::one(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::PlusZ => "+z",
            Direction::MinusZ => "-z",
        }
    }
}

/// Polarization labelled in the lab frame with respect to the +Z
/// quantization axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    SigmaPlus,
    SigmaMinus,
    /// Transverse linear polarization along x. In the selection rules it
    /// denotes light polarized along the quantization axis instead.
    Linear,
}

impl Polarization {
    pub fn delta_m(self) -> i32 {
        match self {
            Polarization::SigmaPlus => 1,
            Polarization::SigmaMinus => -1,
            Polarization::Linear => 0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarization::SigmaPlus => Polarization::SigmaMinus,
            Polarization::SigmaMinus => Polarization::SigmaPlus,
            Polarization::Linear => Polarization::Linear,
        }
    }

    pub fn unit<T: Real>(self) -> CVec3<T> {
        match self {
            Polarization::SigmaPlus => spherical(1),
            Polarization::SigmaMinus => spherical(-1),
            Polarization::Linear => {
                let (o, z) = (T::one(), T::zero());
                [Complex::new(o, z), Complex::new(z, z), Complex::new(z, z)]
            }
        }
    }

    /// Classifies a transverse vector. Returns `None` for elliptical or
    /// vanishing vectors.
    pub fn classify<T: Real>(v: &CVec3<T>) -> Option<Self> {
        let n = norm(v);
        if n == T::zero() {
            return None;
        }
        let tol = lit::<T>(1e-9) * n;
        let along_plus = dot(v, &spherical(-1)).norm();
        let along_minus = dot(v, &spherical(1)).norm();
        if along_minus <= tol {
            Some(Polarization::SigmaPlus)
        } else if along_plus <= tol {
            Some(Polarization::SigmaMinus)
        } else if (along_plus - along_minus).abs() <= tol {
            Some(Polarization::Linear)
        } else {
            None
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::SigmaPlus => "sigma+",
            Polarization::SigmaMinus => "sigma-",
            Polarization::Linear => "linear",
        })
    }
}

/// Monochromatic plane-wave component `i E exp(+-i k_L Z - i omega t) + h.c.`
/// together with its magnetic partner `B = n x E / c`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldComponent<T> {
    direction: Direction,
    polarization: Polarization,
    e: CVec3<T>,
    b: CVec3<T>,
    omega: T,
    k_l: T,
}

impl<T: Real> FieldComponent<T> {
    pub fn plane_wave(
        direction: Direction,
        polarization: Polarization,
        amplitude: Complex<T>,
        omega: T,
        c: T,
    ) -> Result<Self, PolarizationError> {
        for (what, value) in [("angular frequency", omega), ("speed of light", c)] {
            if !(value > T::zero()) {
                return Err(PolarizationError::NonPositive { what, value: value.to_f64().unwrap_or(f64::NAN) });
            }
        }
        let e = polarization.unit::<T>().map(|u| u * amplitude);
        let b = z_cross(direction.sign(), &e).map(|x| x / c);
        Ok(Self { direction, polarization, e, b, omega, k_l: omega / c })
    }

    /// Forward beam with the given polarization plus its retro-reflection,
    /// whose lab-frame helicity is flipped and whose intensity is unchanged.
    pub fn retro_reflected_pair(
        forward: Polarization,
        amplitude: Complex<T>,
        omega: T,
        c: T,
    ) -> Result<[Self; 2], PolarizationError> {
        Ok([
            Self::plane_wave(Direction::PlusZ, forward, amplitude, omega, c)?,
            Self::plane_wave(Direction::MinusZ, forward.flipped(), amplitude, omega, c)?,
        ])
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn polarization(&self) -> Polarization {
        self.polarization
    }

    pub fn electric(&self) -> &CVec3<T> {
        &self.e
    }

    pub fn magnetic(&self) -> &CVec3<T> {
        &self.b
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn wavenumber(&self) -> T {
        self.k_l
    }

    /// Helicity label of `B*`, the combination that drives the magnetic
    /// dipole coupling.
    pub fn magnetic_polarization(&self) -> Option<Polarization> {
        Polarization::classify(&conj(&self.b))
    }
}
