use std::f64::consts::PI;

use e1m1_core::{Axis, GaussianWavepacket};
use e1m1_phasespace::Unitary;
use num_complex::Complex64;

use crate::{Grid1D, GridError};

/// Single-component wavefunction sampled on a [`Grid1D`], normalised so
/// that `sum |psi|^2 dz = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    grid: Grid1D,
    psi: Vec<Complex64>,
}

impl GridWavefunction {
    pub fn new(grid: Grid1D, psi: Vec<Complex64>) -> Result<Self, GridError> {
        if psi.len() != grid.points() {
            return Err(GridError::InvalidInput(format!("{} samples for a grid of {}", psi.len(), grid.points())));
        }
        Ok(Self { grid, psi })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let psi = grid.positions().into_iter().map(f).collect();
        Self { grid, psi }
    }

    /// Position representation of one axis factor of a Gaussian wavepacket,
    /// `(2 pi s^2)^(-1/4) exp(-(z - r0)^2 / (4 s^2) + i p0 (z - r0) / hbar)`,
    /// with the same global phase as its momentum amplitude.
    pub fn from_gaussian(grid: Grid1D, psi: &GaussianWavepacket<f64>, axis: Axis) -> Self {
        let hbar = grid.hbar();
        let s = psi.position_width(axis, hbar);
        let (r0, p0) = (psi.r0()[axis.index()], psi.p0()[axis.index()]);
        let norm = (2.0 * PI * s * s).powf(-0.25);
        Self::from_fn(grid, |z| {
            let d = z - r0;
            Complex64::from_polar(norm * (-d * d / (4.0 * s * s)).exp(), p0 * d / hbar)
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.psi
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.psi
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(Complex64::norm_sqr).sum::<f64>() * self.grid.spacing()
    }

    /// Continuum-normalised momentum amplitudes `phi(p_j)` in FFT order,
    /// `phi(p) = (2 pi hbar)^(-1/2) int psi(z) exp(-i p z / hbar) dz`.
    pub fn momentum_amplitudes(&self) -> Vec<Complex64> {
        momentum_amplitudes(&self.grid, &self.psi)
    }

    pub fn mean_position(&self) -> f64 {
        let dz = self.grid.spacing();
        self.psi.iter().enumerate().map(|(j, v)| self.grid.z(j) * v.norm_sqr()).sum::<f64>() * dz / self.norm_sqr()
    }

    pub fn position_variance(&self) -> f64 {
        let dz = self.grid.spacing();
        let m = self.mean_position();
        let second: f64 = self.psi.iter().enumerate().map(|(j, v)| (self.grid.z(j) - m).powi(2) * v.norm_sqr()).sum();
        second * dz / self.norm_sqr()
    }

    pub fn mean_momentum(&self) -> f64 {
        mean_momentum(&self.grid, &self.psi) / self.norm_sqr()
    }

    /// Applies the `axis` part of a canonical unitary together with its
    /// global phase. Components along the other two axes are ignored.
    pub fn apply_unitary(&self, u: &Unitary, axis: Axis) -> Self {
        self.apply_axis(u, axis, true)
    }

    fn apply_axis(&self, u: &Unitary, axis: Axis, with_phase: bool) -> Self {
        let mut psi = self.psi.clone();
        apply_unitary_in_place(&self.grid, &mut psi, u, axis, with_phase);
        Self { grid: self.grid.clone(), psi }
    }

    pub fn overlap(&self, other: &Self) -> Result<Complex64, GridError> {
        overlap_numeric(self, other)
    }
}

pub(crate) fn momentum_amplitudes(grid: &Grid1D, psi: &[Complex64]) -> Vec<Complex64> {
    let mut buf = psi.to_vec();
    grid.fft(&mut buf);
    let hbar = grid.hbar();
    let z0 = grid.z(0);
    let scale = grid.spacing() / (2.0 * PI * hbar).sqrt();
    buf.iter().enumerate().map(|(j, v)| v * Complex64::from_polar(scale, -grid.momentum(j) * z0 / hbar)).collect()
}

/// `int p |phi(p)|^2 dp`, not divided by the norm.
pub(crate) fn mean_momentum(grid: &Grid1D, psi: &[Complex64]) -> f64 {
    let phi = momentum_amplitudes(grid, psi);
    phi.iter().enumerate().map(|(j, v)| grid.momentum(j) * v.norm_sqr()).sum::<f64>() * grid.momentum_spacing()
}

/// `U = exp(i theta) exp(i b Z / hbar) exp(-i c P / hbar) exp(-i a P^2 / hbar)`
/// restricted to one axis.
pub(crate) fn apply_unitary_in_place(grid: &Grid1D, psi: &mut [Complex64], u: &Unitary, axis: Axis, with_phase: bool) {
    let hbar = grid.hbar();
    let i = axis.index();
    let (a, b, c) = (u.a(), u.b()[i], u.c()[i]);
    if a != 0.0 || c != 0.0 {
        let factors: Vec<Complex64> = grid
            .momenta()
            .into_iter()
            .map(|p| Complex64::from_polar(1.0, -(a * p * p + c * p) / hbar))
            .collect();
        grid.apply_in_momentum(psi, &factors);
    }
    let theta = if with_phase { u.theta() } else { 0.0 };
    for (j, v) in psi.iter_mut().enumerate() {
        *v *= Complex64::from_polar(1.0, theta + b * grid.z(j) / hbar);
    }
}

/// Riemann-sum inner product `<a|b> = sum conj(a) b dz`.
pub fn overlap_numeric(a: &GridWavefunction, b: &GridWavefunction) -> Result<Complex64, GridError> {
    if a.grid != b.grid {
        return Err(GridError::GridMismatch);
    }
    let s: Complex64 = a.psi.iter().zip(&b.psi).map(|(x, y)| x.conj() * y).sum();
    Ok(s * a.grid.spacing())
}

/// `<psi| U |psi>` for a three-dimensional Gaussian wavepacket evaluated on
/// three independent one-dimensional grids, one per axis. The canonical
/// unitary factorises over the axes, so the result is the product of the
/// three one-dimensional overlaps.
pub fn separable_expectation(
    u: &Unitary,
    psi: &GaussianWavepacket<f64>,
    grids: &[Grid1D; 3],
) -> Result<Complex64, GridError> {
    let mut out = Complex64::new(1.0, 0.0);
    for axis in Axis::ALL {
        let grid = &grids[axis.index()];
        if grid.hbar() != u.hbar() {
            return Err(GridError::InvalidInput(format!("grid hbar {} differs from operator hbar {}", grid.hbar(), u.hbar())));
        }
        let start = GridWavefunction::from_gaussian(grid.clone(), psi, axis);
        let moved = start.apply_axis(u, axis, axis == Axis::Z);
        out *= overlap_numeric(&start, &moved)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet() -> GaussianWavepacket<f64> {
        GaussianWavepacket::new([0.0, 0.0, 1.5], [1.0, 1.0, 0.7], [0.0, 0.0, -0.4]).unwrap()
    }

    #[test]
    fn gaussian_is_normalised() {
        let g = Grid1D::new(40.0, 512, 1.0).unwrap();
        let w = GridWavefunction::from_gaussian(g, &packet(), Axis::Z);
        assert!((w.norm_sqr() - 1.0).abs() < 1e-12);
        assert!((w.mean_position() + 0.4).abs() < 1e-12);
        assert!((w.mean_momentum() - 1.5).abs() < 1e-10);
    }

    #[test]
    fn momentum_amplitudes_match_the_wavepacket() {
        let g = Grid1D::new(40.0, 512, 1.0).unwrap();
        let psi = packet();
        let w = GridWavefunction::from_gaussian(g.clone(), &psi, Axis::Z);
        let phi = w.momentum_amplitudes();
        for (j, v) in phi.iter().enumerate() {
            let exact = psi.amplitude_1d(Axis::Z, g.momentum(j), 1.0);
            assert!((v - exact).norm() < 1e-12, "{j}: {v} vs {exact}");
        }
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = GridWavefunction::from_gaussian(Grid1D::new(40.0, 512, 1.0).unwrap(), &packet(), Axis::Z);
        let b = GridWavefunction::from_gaussian(Grid1D::new(40.0, 256, 1.0).unwrap(), &packet(), Axis::Z);
        assert_eq!(overlap_numeric(&a, &b), Err(GridError::GridMismatch));
    }
}
