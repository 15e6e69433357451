use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{GridError, MultiLevelField};

/// Position-diagonal part of a Hamiltonian acting on a multi-level field.
pub trait PointHamiltonian {
    fn levels(&self) -> usize;

    fn mass(&self) -> f64;

    /// Whether `matrix` is independent of time, allowing the pointwise
    /// propagators to be computed once per run.
    fn is_static(&self) -> bool;

    /// Internal-state block of `H / hbar` at `(z, t)` without the kinetic
    /// energy, which is common to all levels.
    fn matrix(&self, z: f64, t: f64) -> DMatrix<Complex64>;

    /// Largest momentum the Hamiltonian can transfer up to `t_end`.
    fn largest_kick(&self, t_end: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Time steps of the coarse run; the certification run uses twice as many.
    pub steps: usize,
    /// Number of equally spaced trace rows after `t = 0`; must divide `steps`.
    pub samples: usize,
    pub tolerance: f64,
    pub check_convergence: bool,
}

impl Default for StepControl {
    fn default() -> Self {
        Self { steps: 1000, samples: 50, tolerance: 1e-6, check_convergence: true }
    }
}

impl StepControl {
    pub fn new(steps: usize, samples: usize) -> Self {
        Self { steps, samples, ..Default::default() }
    }

    pub fn unchecked(self) -> Self {
        Self { check_convergence: false, ..self }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub populations: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub steps: usize,
    pub dt: f64,
    /// Largest population change between the coarse and the fine run over
    /// all trace rows, when step halving was performed.
    pub change: Option<f64>,
    pub norm_error: f64,
    /// Largest population of each level along the trace.
    pub max_population: Vec<f64>,
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "steps {} dt {:.6e} norm error {:.3e}", self.steps, self.dt, self.norm_error)?;
        match self.change {
            Some(c) => write!(f, " step-halving change {c:.3e}"),
            None => write!(f, " step halving skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub field: MultiLevelField,
    pub trace: Vec<TraceRow>,
    pub report: ConvergenceReport,
}

impl Propagation {
    pub fn final_populations(&self) -> Vec<f64> {
        self.field.populations()
    }
}

/// Strang split-step propagation `K/2 V K/2` with the kinetic step taken in
/// momentum space and `V` the exact exponential of the pointwise level
/// matrix, evaluated at the midpoint of each step.
///
/// With `check_convergence` the run is repeated at half the step and fails
/// if any recorded population moves by more than the tolerance; the finer
/// run is returned.
pub fn propagate<H: PointHamiltonian>(
    field: &MultiLevelField,
    h: &H,
    t_end: f64,
    control: StepControl,
) -> Result<Propagation, GridError> {
    if field.level_count() != h.levels() {
        return Err(GridError::LevelCount(field.level_count()));
    }
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(GridError::InvalidInput(format!("propagation time must be finite and non-negative, got {t_end}")));
    }
    if control.steps == 0 || control.samples == 0 || control.steps % control.samples != 0 {
        return Err(GridError::InvalidInput(format!(
            "{} trace samples do not divide {} steps",
            control.samples, control.steps
        )));
    }
    field.grid().check_nyquist(field.momentum_extent(), h.largest_kick(t_end))?;
    let coarse = run(field, h, t_end, control.steps, control.samples);
    if !control.check_convergence {
        return Ok(coarse);
    }
    let mut fine = run(field, h, t_end, 2 * control.steps, control.samples);
    let change = coarse
        .trace
        .iter()
        .zip(&fine.trace)
        .flat_map(|(a, b)| a.populations.iter().zip(&b.populations).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max);
    fine.report.change = Some(change);
    if change > control.tolerance {
        return Err(GridError::NotConverged { change, tolerance: control.tolerance });
    }
    Ok(fine)
}

fn exponential(m: DMatrix<Complex64>, dt: f64) -> Vec<Complex64> {
    let u = (m * Complex64::new(0.0, -dt)).exp();
    let n = u.nrows();
    let mut out = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            out.push(u[(r, c)]);
        }
    }
    out
}

fn run<H: PointHamiltonian>(field: &MultiLevelField, h: &H, t_end: f64, steps: usize, samples: usize) -> Propagation {
    let grid = field.grid().clone();
    let levels = field.level_count();
    let dt = t_end / steps as f64;
    let hbar = grid.hbar();
    let rate = 1.0 / (2.0 * h.mass() * hbar);
    let half_kinetic: Vec<Complex64> =
        grid.momenta().iter().map(|p| Complex64::from_polar(1.0, -p * p * rate * dt / 2.0)).collect();
    let positions = grid.positions();
    let point_props = |t: f64| -> Vec<Vec<Complex64>> { positions.iter().map(|&z| exponential(h.matrix(z, t), dt)).collect() };
    let fixed = if h.is_static() { Some(point_props(0.0)) } else { None };

    let mut state = field.clone();
    let initial_norm = state.norm();
    let every = steps / samples;
    let mut trace = vec![TraceRow { t: 0.0, populations: state.populations() }];
    let mut scratch = vec![Complex64::new(0.0, 0.0); levels];
    for step in 0..steps {
        for l in state.levels_mut() {
            grid.apply_in_momentum(l, &half_kinetic);
        }
        let varying;
        let props = match &fixed {
            Some(p) => p,
            None => {
                varying = point_props((step as f64 + 0.5) * dt);
                &varying
            }
        };
        let lv = state.levels_mut();
        for (j, u) in props.iter().enumerate() {
            for r in 0..levels {
                scratch[r] = (0..levels).map(|c| u[r * levels + c] * lv[c][j]).sum();
            }
            for r in 0..levels {
                lv[r][j] = scratch[r];
            }
        }
        for l in state.levels_mut() {
            grid.apply_in_momentum(l, &half_kinetic);
        }
        if (step + 1) % every == 0 {
            trace.push(TraceRow { t: (step + 1) as f64 * dt, populations: state.populations() });
        }
    }
    let max_population =
        (0..levels).map(|l| trace.iter().map(|r| r.populations[l]).fold(0.0, f64::max)).collect();
    let norm_error = (state.norm() - initial_norm).abs();
    Propagation {
        field: state,
        trace,
        report: ConvergenceReport { steps, dt, change: None, norm_error, max_population },
    }
}
