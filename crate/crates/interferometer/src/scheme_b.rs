use e1m1_core::InternalState::{Excited, Ground};
use e1m1_pulses::PulseKind;

use crate::setup::PathSet;
use crate::{exit_port_intensity, InterferenceResult, InterferometerError, PortBranches, SchemeBSequence, Setup};

/// Paths of the scheme without superpositions for the initial state of
/// `seq`. The detected port is the initial state.
///
/// The upper arm receives `+k_p, -k_p, -k_p, +k_p` at `T0`, `T1`, `T4` and
/// `T4 + delta_t`, the lower arm the opposite kicks. Both arms are flipped
/// by the pi pulse starting at `T2` and flipped back by the one starting at
/// `T3`.
pub fn build_scheme_b(seq: &SchemeBSequence, setup: &Setup) -> Result<PortBranches, InterferometerError> {
    seq.validate()?;
    setup.validate()?;
    let t = setup.check_duration(PulseKind::Pi, seq.t_pi)?;
    let pulse = setup.pulse(PulseKind::Pi);
    let h = setup.hbar();
    let k = seq.k_p;
    let start = seq.initial_state;
    let arm = |sign: f64| {
        // the events in time order; pi pulses may coincide with Bragg pulses
        // and then act right after them
        let mut events = vec![
            (seq.t1, 0, Event::Bragg(-sign)),
            (seq.t2, 1, Event::Pulse),
            (seq.t3, 1, Event::Pulse),
            (seq.t4, 0, Event::Bragg(-sign)),
            (seq.t_end(), 0, Event::Bragg(sign)),
        ];
        events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut path = PathSet::start(start, h).bragg(setup, sign, k);
        let mut now = seq.t0;
        for (at, _, ev) in events {
            path = path.fall(setup, at - now);
            match ev {
                Event::Bragg(n) => {
                    path = path.bragg(setup, n, k);
                    now = at;
                }
                Event::Pulse => {
                    let to = path.state.flipped();
                    path = path.pulse(&pulse, to);
                    now = at + t;
                }
            }
        }
        path
    };
    let lower = arm(-1.0);
    let upper = arm(1.0);
    Ok(PortBranches { port: lower.state, lower: lower.branches, upper: upper.branches })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Event {
    Bragg(f64),
    Pulse,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeBObservables {
    pub ground_run: InterferenceResult,
    pub excited_run: InterferenceResult,
    pub delta_phi_g: f64,
    pub delta_phi_e: f64,
    /// `delta_phi_g + delta_phi_e`.
    pub delta_phi_plus: f64,
    /// `delta_phi_g - delta_phi_e`.
    pub delta_phi_minus: f64,
}

/// Runs the sequence once from each initial state.
pub fn scheme_b_observables(seq: &SchemeBSequence, setup: &Setup) -> Result<SchemeBObservables, InterferometerError> {
    let g = exit_port_intensity(&build_scheme_b(&seq.with_initial_state(Ground), setup)?, &setup.psi);
    let e = exit_port_intensity(&build_scheme_b(&seq.with_initial_state(Excited), setup)?, &setup.psi);
    Ok(SchemeBObservables {
        delta_phi_g: g.delta_phi,
        delta_phi_e: e.delta_phi,
        delta_phi_plus: g.delta_phi + e.delta_phi,
        delta_phi_minus: g.delta_phi - e.delta_phi,
        ground_run: g,
        excited_run: e,
    })
}
