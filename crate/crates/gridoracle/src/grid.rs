use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::GridError;

/// Uniform periodic grid on `[-L/2, L/2)` together with its dual momentum
/// grid. Momenta are stored in FFT order, `p_j = 2 pi hbar j / L` for
/// `j < n/2` and wrapped to negative values above.
#[derive(Clone)]
pub struct Grid1D {
    length: f64,
    n: usize,
    hbar: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid1D").field("length", &self.length).field("n", &self.n).field("hbar", &self.hbar).finish()
    }
}

impl PartialEq for Grid1D {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length && self.n == other.n && self.hbar == other.hbar
    }
}

impl Grid1D {
    pub fn new(length: f64, n: usize, hbar: f64) -> Result<Self, GridError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(GridError::InvalidGrid(format!("extent must be positive, got {length}")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(GridError::InvalidGrid(format!("point count must be a power of two >= 4, got {n}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(GridError::InvalidGrid(format!("hbar must be positive, got {hbar}")));
        }
        let mut planner = FftPlanner::new();
        Ok(Self { length, n, hbar, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn z(&self, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.spacing()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.z(j)).collect()
    }

    pub fn momentum_spacing(&self) -> f64 {
        2.0 * PI * self.hbar / self.length
    }

    pub fn momentum(&self, j: usize) -> f64 {
        let j = if j < self.n / 2 { j as f64 } else { j as f64 - self.n as f64 };
        j * self.momentum_spacing()
    }

    pub fn momenta(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.momentum(j)).collect()
    }

    /// Largest represented momentum `pi hbar / dz`.
    pub fn max_momentum(&self) -> f64 {
        PI * self.hbar / self.spacing()
    }

    /// Requires `max_momentum >= 4 (width + kick)`, where `width` is the
    /// momentum extent of the state and `kick` the largest momentum transfer.
    pub fn check_nyquist(&self, width: f64, kick: f64) -> Result<(), GridError> {
        let required = 4.0 * (width.abs() + kick.abs());
        if self.max_momentum() < required {
            return Err(GridError::Nyquist { max_momentum: self.max_momentum(), required });
        }
        Ok(())
    }

    pub(crate) fn fft(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
    }

    /// Inverse transform including the `1/n` normalisation.
    pub(crate) fn ifft(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        let s = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= s;
        }
    }

    /// Multiplies a position-space array by `f(p)` in momentum space.
    pub(crate) fn apply_in_momentum(&self, buf: &mut [Complex64], factors: &[Complex64]) {
        self.fft(buf);
        for (v, f) in buf.iter_mut().zip(factors) {
            *v *= f;
        }
        self.ifft(buf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid1D::new(1.0, 100, 1.0).is_err());
        assert!(Grid1D::new(-1.0, 64, 1.0).is_err());
        assert!(Grid1D::new(1.0, 64, 0.0).is_err());
    }

    #[test]
    fn dual_grid() {
        let g = Grid1D::new(8.0, 16, 1.0).unwrap();
        assert_eq!(g.z(0), -4.0);
        assert_eq!(g.z(8), 0.0);
        assert_eq!(g.momentum(1), 2.0 * PI / 8.0);
        assert_eq!(g.momentum(15), -2.0 * PI / 8.0);
        assert!((g.max_momentum() - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn nyquist_check() {
        let g = Grid1D::new(8.0, 16, 1.0).unwrap();
        assert!(g.check_nyquist(1.0, 0.5).is_ok());
        assert!(matches!(g.check_nyquist(1.0, 1.0), Err(GridError::Nyquist { .. })));
    }
}
