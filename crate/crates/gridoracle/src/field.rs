use std::io::Write;

use e1m1_core::{Axis, GaussianWavepacket};
use e1m1_phasespace::Unitary;
use num_complex::Complex64;

use crate::wavefunction::{apply_unitary_in_place, mean_momentum, momentum_amplitudes};
use crate::{Grid1D, GridError, GridWavefunction};

/// Ancilla, excited and ground indices of a three-level field.
pub const THREE_LEVEL_NAMES: [&str; 3] = ["a", "e", "g"];
/// Excited and ground indices of a two-level field.
pub const TWO_LEVEL_NAMES: [&str; 2] = ["e", "g"];

/// Internal-state resolved wavefunction: one amplitude array per level on
/// a shared grid. Two-level fields are ordered `(e, g)`, three-level fields
/// `(a, e, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLevelField {
    grid: Grid1D,
    levels: Vec<Vec<Complex64>>,
}

impl MultiLevelField {
    pub fn new(grid: Grid1D, levels: Vec<Vec<Complex64>>) -> Result<Self, GridError> {
        if !(2..=3).contains(&levels.len()) {
            return Err(GridError::LevelCount(levels.len()));
        }
        if levels.iter().any(|l| l.len() != grid.points()) {
            return Err(GridError::InvalidInput("level arrays must match the grid size".into()));
        }
        Ok(Self { grid, levels })
    }

    /// Product state `sum_l c_l |l> (x) |psi>` with the axial factor of a
    /// Gaussian wavepacket.
    pub fn from_gaussian(grid: Grid1D, psi: &GaussianWavepacket<f64>, spinor: &[Complex64]) -> Result<Self, GridError> {
        let base = GridWavefunction::from_gaussian(grid.clone(), psi, Axis::Z);
        let levels = spinor.iter().map(|c| base.values().iter().map(|v| v * c).collect()).collect();
        Self::new(grid, levels)
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, l: usize) -> &[Complex64] {
        &self.levels[l]
    }

    pub fn level_wavefunction(&self, l: usize) -> GridWavefunction {
        GridWavefunction::new(self.grid.clone(), self.levels[l].clone()).expect("level arrays match the grid")
    }

    pub(crate) fn levels_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.levels
    }

    pub fn populations(&self) -> Vec<f64> {
        let dz = self.grid.spacing();
        self.levels.iter().map(|l| l.iter().map(Complex64::norm_sqr).sum::<f64>() * dz).collect()
    }

    pub fn norm(&self) -> f64 {
        self.populations().iter().sum()
    }

    /// Unnormalised `<P_z>` carried by one level.
    pub fn level_momentum(&self, l: usize) -> f64 {
        mean_momentum(&self.grid, &self.levels[l])
    }

    /// `<P_z>` of the whole state divided by its norm.
    pub fn mean_momentum(&self) -> f64 {
        (0..self.levels.len()).map(|l| self.level_momentum(l)).sum::<f64>() / self.norm()
    }

    /// Momentum amplitudes of one level in FFT order.
    pub fn momentum_amplitudes(&self, l: usize) -> Vec<Complex64> {
        momentum_amplitudes(&self.grid, &self.levels[l])
    }

    /// `sqrt(<P^2> - <P>^2) + |<P>|` over all levels, the momentum extent
    /// used for the resolution check.
    pub fn momentum_extent(&self) -> f64 {
        let dp = self.grid.momentum_spacing();
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for l in 0..self.levels.len() {
            for (j, v) in self.momentum_amplitudes(l).iter().enumerate() {
                let p = self.grid.momentum(j);
                let w = v.norm_sqr() * dp;
                m0 += w;
                m1 += p * w;
                m2 += p * p * w;
            }
        }
        let mean = m1 / m0;
        (m2 / m0 - mean * mean).max(0.0).sqrt() + mean.abs()
    }

    /// Applies the same canonical unitary (its `Z` part) to every level.
    pub fn apply_unitary(&self, u: &Unitary) -> Self {
        let mut out = self.clone();
        for l in out.levels.iter_mut() {
            apply_unitary_in_place(&self.grid, l, u, Axis::Z, true);
        }
        out
    }

    /// `sum_l <self_l|other_l>`.
    pub fn overlap(&self, other: &Self) -> Result<Complex64, GridError> {
        if self.grid != other.grid || self.levels.len() != other.levels.len() {
            return Err(GridError::GridMismatch);
        }
        let dz = self.grid.spacing();
        let s: Complex64 =
            self.levels.iter().zip(&other.levels).flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.conj() * y)).sum();
        Ok(s * dz)
    }

    /// CSV dump with columns `z` and `|psi_l|^2` per level.
    pub fn write_snapshot<W: Write>(&self, out: W) -> Result<(), GridError> {
        let names: &[&str] = if self.levels.len() == 3 { &THREE_LEVEL_NAMES } else { &TWO_LEVEL_NAMES };
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        let mut header = vec!["z".to_string()];
        header.extend(names.iter().map(|n| format!("density_{n}")));
        w.write_record(&header)?;
        for j in 0..self.grid.points() {
            let mut row = vec![format!("{:.16e}", self.grid.z(j))];
            row.extend(self.levels.iter().map(|l| format!("{:.16e}", l[j].norm_sqr())));
            w.write_record(&row)?;
        }
        w.flush().map_err(|e| GridError::Output(e.to_string()))
    }
}
