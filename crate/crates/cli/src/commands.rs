use std::f64::consts::PI;

use e1m1_beam::{beam_factors, Beam};
use e1m1_core::{Axis, Dimension, InternalState};
use e1m1_gridoracle::{propagate_two_level_beam, BeamModel, BeamTwoLevel, GridError, Grid1D, MultiLevelField, StepControl};
use e1m1_interferometer::{
    double_differential, scheme_a_observables, scheme_a_prediction, scheme_b_observables, scheme_b_prediction, InterferometerError,
};
use e1m1_phasespace::{exit_signal, overlap_pairs};
use e1m1_pulses::{generalized_pulse, PulseKind, PulseOptions};
use e1m1_twolevel::{rabi_populations, EffectiveTwoLevel};
use num_complex::Complex64;

use crate::config::{PulseChoice, RunConfig, Scheme};
use crate::model::Model;
use crate::table::{Cell, Table};
use crate::CliError;

/// A subcommand with the flags that override configuration values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Command {
    Rabi { gamma_rad_s: Option<f64> },
    Pulse { kind: Option<PulseChoice> },
    Beam,
    Ifo { scheme: Option<Scheme>, double_diff: bool },
    Oracle { kind: Option<PulseChoice> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Rabi { .. } => "rabi",
            Command::Pulse { .. } => "pulse",
            Command::Beam => "beam",
            Command::Ifo { .. } => "ifo",
            Command::Oracle { .. } => "oracle",
        }
    }
}

/// Tables written by a run and a one-row summary used by sweeps. The
/// summary may name a residual column for the Richardson ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub tables: Vec<Table>,
    pub summary: Table,
    pub residual: Option<&'static str>,
}

fn model(cfg: &RunConfig) -> Result<Model, CliError> {
    Model::build(cfg).map_err(CliError::Validation)
}

fn kind_of(choice: PulseChoice) -> PulseKind {
    match choice {
        PulseChoice::Pi => PulseKind::Pi,
        PulseChoice::PiHalf => PulseKind::PiHalf,
    }
}

fn ifo_error(e: InterferometerError) -> CliError {
    CliError::invalid("sequence", e.to_string())
}

pub fn execute(cmd: Command, cfg: &RunConfig) -> Result<Output, CliError> {
    match cmd {
        Command::Rabi { gamma_rad_s } => rabi(cfg, gamma_rad_s),
        Command::Pulse { kind } => pulse(cfg, kind.unwrap_or(cfg.numerics.pulse_kind)),
        Command::Beam => beam(cfg),
        Command::Ifo { scheme, double_diff } => {
            let mut cfg = cfg.clone();
            if let Some(s) = scheme {
                cfg.sequence.scheme = s;
            }
            match (cfg.sequence.scheme, double_diff) {
                (Scheme::A, true) => ifo_double_diff(&cfg),
                (Scheme::A, false) => ifo_a(&cfg),
                (Scheme::B, false) => ifo_b(&cfg),
                (Scheme::B, true) => Err(CliError::invalid("sequence.scheme", "the double-differential phase needs scheme a")),
            }
        }
        Command::Oracle { kind } => oracle(cfg, kind.unwrap_or(cfg.numerics.pulse_kind)),
    }
}

fn single(name: &str, header: &[&str], row: Vec<Cell>) -> Table {
    let mut t = Table::new(name, header);
    t.push(row);
    t
}

fn rabi(cfg: &RunConfig, gamma: Option<f64>) -> Result<Output, CliError> {
    let c = &cfg.couplings;
    let m = model(cfg)?;
    let detuning = match (gamma, c.detuning_rad_s) {
        (Some(g), _) => g - c.ac_stark_minus_rad_s,
        (None, Some(d)) => d,
        (None, None) => m.units.to_si(m.setup.coeffs.delta(), Dimension::FREQUENCY),
    };
    let e2l = EffectiveTwoLevel::new(Complex64::new(c.rabi_rad_s, 0.0), c.ac_stark_plus_rad_s, c.ac_stark_minus_rad_s, detuning);
    let duration = cfg.numerics.rabi_duration_s.unwrap_or(4.0 * PI / c.rabi_rad_s);
    let n = cfg.numerics.rabi_samples;
    let mut t = Table::new("rabi", &["t_s", "p_e", "p_g"]);
    let mut peak: f64 = 0.0;
    for i in 0..=n {
        let time = duration * i as f64 / n as f64;
        let (pe, pg) = rabi_populations(time, &e2l, cfg.atom.initial_state).map_err(|e| CliError::invalid("numerics.rabi_duration_s", e.to_string()))?;
        peak = peak.max(pe);
        t.push(vec![time.into(), pe.into(), pg.into()]);
    }
    let summary = single(
        "rabi_summary",
        &["gamma_rad_s", "omega_eff_rad_s", "amplitude", "p_e_max"],
        vec![e2l.gamma().into(), e2l.omega_eff().into(), e2l.amplitude().into(), peak.into()],
    );
    Ok(Output { tables: vec![t], summary, residual: None })
}

fn pulse(cfg: &RunConfig, choice: PulseChoice) -> Result<Output, CliError> {
    let m = model(cfg)?;
    let s = &m.setup;
    let kind = kind_of(choice);
    let op = generalized_pulse(kind, &s.coeffs, PulseOptions { splitting: s.splitting, keep_translation: false, gravity: s.gravity });
    let dp = s.psi.momentum_width(Axis::Z);
    let p0 = s.psi.p0()[2];
    let n = cfg.numerics.pulse_samples;
    let span = cfg.numerics.pulse_momentum_span * dp;
    let momentum_si = |p: f64| m.units.to_si(p, Dimension::MOMENTUM);
    let header = ["p_z_kg_m_s", "p_ee", "p_eg", "p_ge", "p_gg", "phase_eg_rad"];
    let mut t = Table::new(&format!("pulse_{kind}"), &header);
    let row_at = |p: f64| {
        let u = op.internal_matrix([0.0, 0.0, p]);
        vec![
            momentum_si(p).into(),
            u[0][0].norm_sqr().into(),
            u[0][1].norm_sqr().into(),
            u[1][0].norm_sqr().into(),
            u[1][1].norm_sqr().into(),
            u[0][1].arg().into(),
        ]
    };
    for i in 0..n {
        let p = if n == 1 { p0 } else { p0 - span + 2.0 * span * i as f64 / (n - 1) as f64 };
        t.push(row_at(p));
    }
    let centre = op.internal_matrix([0.0, 0.0, p0]);
    let summary = single(
        &format!("pulse_{kind}_summary"),
        &["kind", "duration_s", "kick_per_m", "transfer_g_to_e", "transfer_e_to_g"],
        vec![
            kind.to_string().into(),
            m.time_si(op.duration).into(),
            m.units.to_si(s.coeffs.k(), Dimension::WAVENUMBER).into(),
            centre[0][1].norm_sqr().into(),
            centre[1][0].norm_sqr().into(),
        ],
    );
    Ok(Output { tables: vec![t], summary, residual: None })
}

fn beam(cfg: &RunConfig) -> Result<Output, CliError> {
    let b = Beam::from_waist_and_rayleigh(cfg.beam.waist_m, cfg.beam.rayleigh_length_m).map_err(|e| CliError::invalid("beam", e.to_string()))?;
    let z_r = cfg.beam.rayleigh_length_m;
    let n = cfg.numerics.beam_samples;
    let span = cfg.numerics.beam_span;
    let header = [
        "z_m",
        "z_over_z_r",
        "inv_spot_exact_per_m",
        "inv_spot_expanded_per_m",
        "inv_spot_bound_per_m",
        "inv_curvature_exact_per_m",
        "inv_curvature_expanded_per_m",
        "inv_curvature_bound_per_m",
        "gouy_exact_rad",
        "gouy_expanded_rad",
        "gouy_bound_rad",
        "within_bound",
    ];
    let mut t = Table::new("beam", &header);
    let mut all = true;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let s = -span + 2.0 * span * i as f64 / (n - 1) as f64;
        let f = beam_factors(&b, s * z_r);
        let ok = f.within_bound();
        all &= ok;
        let d = f.deviation();
        for (dev, bound) in [(d.inv_spot, f.remainder_bound.inv_spot), (d.inv_curvature, f.remainder_bound.inv_curvature), (d.gouy, f.remainder_bound.gouy)] {
            if bound > 0.0 {
                worst = worst.max(dev / bound);
            }
        }
        t.push(vec![
            (s * z_r).into(),
            s.into(),
            f.exact.inv_spot.into(),
            f.expanded.inv_spot.into(),
            f.remainder_bound.inv_spot.into(),
            f.exact.inv_curvature.into(),
            f.expanded.inv_curvature.into(),
            f.remainder_bound.inv_curvature.into(),
            f.exact.gouy.into(),
            f.expanded.gouy.into(),
            f.remainder_bound.gouy.into(),
            ok.into(),
        ]);
    }
    let summary = single("beam_summary", &["samples", "all_within_bound", "max_deviation_over_bound"], vec![n.into(), all.into(), worst.into()]);
    Ok(Output { tables: vec![t], summary, residual: None })
}

fn ifo_a(cfg: &RunConfig) -> Result<Output, CliError> {
    let m = model(cfg)?;
    let seq = m.scheme_a.ok_or_else(|| CliError::invalid("sequence.scheme", "scheme a sequence missing"))?;
    let o = scheme_a_observables(&seq, &m.setup).map_err(ifo_error)?;
    let p = scheme_a_prediction(&seq, &m.setup);
    let header = [
        "scheme",
        "epsilon",
        "delta_phi_g_rad",
        "delta_phi_e_rad",
        "delta_phi_minus_rad",
        "visibility_g",
        "visibility_e",
        "intensity_g",
        "intensity_e",
        "leakage",
        "first_order_delta_phi_g_rad",
        "first_order_delta_phi_e_rad",
        "first_order_delta_phi_minus_rad",
        "first_order_visibility_e",
        "residual_minus_rad",
    ];
    let row = vec![
        "a".into(),
        cfg.atom.epsilon.into(),
        o.delta_phi_g.into(),
        o.delta_phi_e.into(),
        o.delta_phi_minus.into(),
        o.v_g.into(),
        o.v_e.into(),
        o.ground.intensity.into(),
        o.excited.intensity.into(),
        o.leakage.into(),
        p.delta_phi_g.into(),
        p.delta_phi_e.into(),
        p.delta_phi_minus.into(),
        p.v_e.into(),
        (o.delta_phi_minus - p.delta_phi_minus).into(),
    ];
    let t = single("ifo_a", &header, row);
    Ok(Output { tables: vec![t.clone()], summary: t, residual: Some("residual_minus_rad") })
}

fn ifo_double_diff(cfg: &RunConfig) -> Result<Output, CliError> {
    let m = model(cfg)?;
    let seq = m.scheme_a.ok_or_else(|| CliError::invalid("sequence.scheme", "scheme a sequence missing"))?;
    let dd = double_differential(&seq, &m.setup).map_err(ifo_error)?;
    let expected = scheme_a_prediction(&seq, &m.setup).double_differential;
    let rel = if expected != 0.0 { (dd - expected) / expected.abs() } else { dd - expected };
    let t = single(
        "ifo_a_double_diff",
        &["scheme", "epsilon", "tau_s", "double_differential_rad", "first_order_rad", "residual_rad", "relative_deviation"],
        vec!["a".into(), cfg.atom.epsilon.into(), cfg.sequence.tau_s.into(), dd.into(), expected.into(), (dd - expected).into(), rel.into()],
    );
    Ok(Output { tables: vec![t.clone()], summary: t, residual: Some("residual_rad") })
}

fn ifo_b(cfg: &RunConfig) -> Result<Output, CliError> {
    let m = model(cfg)?;
    let seq = m.scheme_b.ok_or_else(|| CliError::invalid("sequence.scheme", "scheme b sequence missing"))?;
    let o = scheme_b_observables(&seq, &m.setup).map_err(ifo_error)?;
    let p = scheme_b_prediction(&seq, &m.setup);
    let header = [
        "scheme",
        "epsilon",
        "delta_phi_g_rad",
        "delta_phi_e_rad",
        "delta_phi_plus_rad",
        "delta_phi_minus_rad",
        "visibility_g_run",
        "visibility_e_run",
        "first_order_delta_phi_plus_rad",
        "first_order_delta_phi_minus_rad",
        "residual_minus_rad",
    ];
    let row = vec![
        "b".into(),
        cfg.atom.epsilon.into(),
        o.delta_phi_g.into(),
        o.delta_phi_e.into(),
        o.delta_phi_plus.into(),
        o.delta_phi_minus.into(),
        o.ground_run.visibility.into(),
        o.excited_run.visibility.into(),
        p.delta_phi_plus.into(),
        p.delta_phi_minus.into(),
        (o.delta_phi_minus - p.delta_phi_minus).into(),
    ];
    let t = single("ifo_b", &header, row);
    Ok(Output { tables: vec![t.clone()], summary: t, residual: Some("residual_minus_rad") })
}

fn grid_error(e: GridError) -> CliError {
    match e {
        GridError::NotConverged { .. } => CliError::Convergence(e.to_string()),
        other => CliError::invalid("numerics", other.to_string()),
    }
}

fn oracle(cfg: &RunConfig, choice: PulseChoice) -> Result<Output, CliError> {
    let m = model(cfg)?;
    let s = &m.setup;
    let kind = kind_of(choice);
    let start = cfg.atom.initial_state;
    let h = s.hbar();
    let sigma_z = s.psi.position_width(Axis::Z, h);
    let length = match cfg.numerics.grid_length_m {
        Some(l) => m.units.to_internal(l, Dimension::LENGTH),
        None => 64.0 * sigma_z,
    };
    let grid = Grid1D::new(length, cfg.numerics.grid_points, h).map_err(grid_error)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let spinor = match start {
        InternalState::Excited => [one, zero],
        InternalState::Ground => [zero, one],
    };
    let field = MultiLevelField::from_gaussian(grid, &s.psi, &spinor).map_err(grid_error)?;
    let gravity = if cfg.numerics.oracle_gravity { s.gravity } else { 0.0 };
    let system = BeamTwoLevel::new(s.coeffs, BeamModel::Exact).with_gravity(gravity);
    let t_end = kind.area() / s.coeffs.omega0();
    let control = StepControl { steps: cfg.numerics.steps, samples: cfg.numerics.trace_samples, tolerance: cfg.numerics.tolerance, check_convergence: true };
    let run = propagate_two_level_beam(&field, &system, t_end, control).map_err(grid_error)?;

    let mut trace = Table::new(&format!("oracle_{kind}"), &["t_s", "p_e", "p_g"]);
    for row in &run.trace {
        trace.push(vec![m.time_si(row.t).into(), row.populations[0].into(), row.populations[1].into()]);
    }
    let op = generalized_pulse(kind, &s.coeffs, PulseOptions { splitting: s.splitting, keep_translation: true, gravity });
    let engine = exit_signal(&overlap_pairs(op.cell(start.flipped(), start), &s.psi));
    let grid_transfer = run.final_populations()[if start == InternalState::Ground { 0 } else { 1 }];
    let summary = single(
        &format!("oracle_{kind}_report"),
        &["steps", "dt_s", "step_halving_change", "norm_error", "grid_transfer", "engine_transfer", "difference"],
        vec![
            run.report.steps.into(),
            m.time_si(run.report.dt).into(),
            run.report.change.map(Cell::Float).unwrap_or(Cell::Empty),
            run.report.norm_error.into(),
            grid_transfer.into(),
            engine.into(),
            (grid_transfer - engine).into(),
        ],
    );
    log::info!("oracle {kind}: {}", run.report);
    Ok(Output { tables: vec![trace, summary.clone()], summary, residual: None })
}
