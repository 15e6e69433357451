use e1m1_core::InternalState::{self, Excited, Ground};
use e1m1_pulses::PulseKind;

use crate::setup::PathSet;
use crate::{exit_port_intensity, InterferenceResult, InterferometerError, PortBranches, SchemeASequence, Setup};

/// Lower and upper paths into the ground (`port = g`) or excited
/// (`port = e`) exit of the superposition scheme.
///
/// Both arms start in `g`. The upper arm is kicked by `+k_p` at `T0` and
/// stopped at `T1`, the lower arm is kicked at `T3` and stopped at `T4`;
/// undiffracted passes contribute a factor `1/sqrt 2` each. The pi/2
/// pulse starts at `T2` and the next free segment at `T2 + t_pi/2`.
pub fn build_scheme_a(seq: &SchemeASequence, setup: &Setup) -> Result<[PortBranches; 2], InterferometerError> {
    seq.validate()?;
    setup.validate()?;
    let t = setup.check_duration(PulseKind::PiHalf, seq.t_pi_half)?;
    let pulse = setup.pulse(PulseKind::PiHalf);
    let h = setup.hbar();
    let k = seq.k_p;
    let port = |to: InternalState| {
        let lower = PathSet::start(Ground, h)
            .bragg(setup, 0.0, k)
            .fall(setup, seq.t1 - seq.t0)
            .bragg(setup, 0.0, k)
            .fall(setup, seq.t2 - seq.t1)
            .pulse(&pulse, to)
            .fall(setup, seq.t3 - seq.t2 - t)
            .bragg(setup, 1.0, k)
            .fall(setup, seq.t4 - seq.t3)
            .bragg(setup, -1.0, k);
        let upper = PathSet::start(Ground, h)
            .bragg(setup, 1.0, k)
            .fall(setup, seq.t1 - seq.t0)
            .bragg(setup, -1.0, k)
            .fall(setup, seq.t2 - seq.t1)
            .pulse(&pulse, to)
            .fall(setup, seq.t3 - seq.t2 - t)
            .bragg(setup, 0.0, k)
            .fall(setup, seq.t4 - seq.t3)
            .bragg(setup, 0.0, k);
        PortBranches { port: to, lower: lower.branches, upper: upper.branches }
    };
    Ok([port(Ground), port(Excited)])
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeAObservables {
    pub ground: InterferenceResult,
    pub excited: InterferenceResult,
    pub delta_phi_g: f64,
    pub delta_phi_e: f64,
    /// `delta_phi_g - delta_phi_e`.
    pub delta_phi_minus: f64,
    pub v_g: f64,
    pub v_e: f64,
    /// Probability carried by paths that miss both exit ports.
    pub leakage: f64,
}

pub fn scheme_a_observables(seq: &SchemeASequence, setup: &Setup) -> Result<SchemeAObservables, InterferometerError> {
    let [g, e] = build_scheme_a(seq, setup)?;
    let ground = exit_port_intensity(&g, &setup.psi);
    let excited = exit_port_intensity(&e, &setup.psi);
    Ok(SchemeAObservables {
        delta_phi_g: ground.delta_phi,
        delta_phi_e: excited.delta_phi,
        delta_phi_minus: ground.delta_phi - excited.delta_phi,
        v_g: ground.visibility,
        v_e: excited.visibility,
        leakage: 1.0 - ground.intensity - excited.intensity,
        ground,
        excited,
    })
}

/// `delta_phi_-(T2) - delta_phi_-(T2 + tau)` from two runs of the engine.
pub fn double_differential(seq: &SchemeASequence, setup: &Setup) -> Result<f64, InterferometerError> {
    let first = scheme_a_observables(seq, setup)?;
    let second = scheme_a_observables(&seq.shifted(), setup)?;
    Ok(first.delta_phi_minus - second.delta_phi_minus)
}
