use num_complex::Complex;

use crate::error::{finite, positive, CoreError};
use crate::{lit, Axis, Real, Vec3};

/// Minimum uncertainty Gaussian centre-of-mass state with diagonal
/// momentum covariance.
///
/// In momentum space
/// `psi(p) = prod_i (2 pi s_i^2)^(-1/4) exp(-(p_i - p0_i)^2 / (4 s_i^2) - i p_i r0_i / hbar)`
/// with `s_i` the momentum widths. The amplitude is normalised by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWavepacket<T> {
    p0: Vec3<T>,
    variance: Vec3<T>,
    r0: Vec3<T>,
}

impl<T: Real> GaussianWavepacket<T> {
    /// Builds a wavepacket from its mean momentum, momentum widths and centre.
    pub fn new(p0: Vec3<T>, widths: Vec3<T>, r0: Vec3<T>) -> Result<Self, CoreError> {
        let names = ["momentum width x", "momentum width y", "momentum width z"];
        let mut variance = [T::zero(); 3];
        for i in 0..3 {
            let w = positive(names[i], widths[i])?;
            variance[i] = w * w;
            finite("mean momentum", p0[i])?;
            finite("centre position", r0[i])?;
        }
        Ok(Self { p0, variance, r0 })
    }

    /// Wavepacket at rest at the origin with isotropic momentum width.
    pub fn isotropic(width: T) -> Result<Self, CoreError> {
        Self::new([T::zero(); 3], [width; 3], [T::zero(); 3])
    }

    pub fn p0(&self) -> Vec3<T> {
        self.p0
    }

    pub fn r0(&self) -> Vec3<T> {
        self.r0
    }

    /// Diagonal of the momentum covariance matrix.
    pub fn variance(&self) -> Vec3<T> {
        self.variance
    }

    pub fn momentum_width(&self, axis: Axis) -> T {
        self.variance[axis.index()].sqrt()
    }

    /// Position width `hbar / (2 dp)` of the minimum uncertainty state.
    pub fn position_width(&self, axis: Axis, hbar: T) -> T {
        hbar / (lit::<T>(2.0) * self.momentum_width(axis))
    }

    pub fn with_p0(mut self, p0: Vec3<T>) -> Self {
        self.p0 = p0;
        self
    }

    pub fn with_r0(mut self, r0: Vec3<T>) -> Self {
        self.r0 = r0;
        self
    }

    /// One-dimensional momentum amplitude along `axis`.
    pub fn amplitude_1d(&self, axis: Axis, p: T, hbar: T) -> Complex<T> {
        let i = axis.index();
        let var = self.variance[i];
        let two_pi = T::PI() * lit(2.0);
        let norm = (two_pi * var).powf(lit(-0.25));
        let d = p - self.p0[i];
        let envelope = norm * (-(d * d) / (lit::<T>(4.0) * var)).exp();
        Complex::from_polar(envelope, -p * self.r0[i] / hbar)
    }

    /// Full momentum amplitude as the product of the three axis factors.
    pub fn amplitude(&self, p: Vec3<T>, hbar: T) -> Complex<T> {
        Axis::ALL
            .iter()
            .fold(Complex::new(T::one(), T::zero()), |acc, &a| acc * self.amplitude_1d(a, p[a.index()], hbar))
    }

    /// Expectation of `P^2`.
    pub fn mean_p_squared(&self) -> T {
        (0..3).fold(T::zero(), |acc, i| acc + self.p0[i] * self.p0[i] + self.variance[i])
    }

    /// Expectation of `X_i^2` for the given axis.
    pub fn mean_position_squared(&self, axis: Axis, hbar: T) -> T {
        let s = self.position_width(axis, hbar);
        let r = self.r0[axis.index()];
        r * r + s * s
    }

    /// Expectation of `P_i^4` along one axis.
    pub fn mean_p4(&self, axis: Axis) -> T {
        let m = self.p0[axis.index()];
        let v = self.variance[axis.index()];
        m.powi(4) + lit::<T>(6.0) * m * m * v + lit::<T>(3.0) * v * v
    }
}
