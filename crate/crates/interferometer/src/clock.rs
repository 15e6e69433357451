use e1m1_beam::PulseCoefficients;
use e1m1_core::InternalState::{self, Excited, Ground};
use e1m1_phasespace::{Branch, Unitary};
use e1m1_pulses::{generalized_pulse, PulseKind, PulseOptions};
use num_complex::Complex64;

use crate::{InterferometerError, PortBranches};

/// Internal-state Mach-Zehnder `pi/2 - gap - pi - gap - pi/2` driven by the
/// E1-M1 beam alone, without gravity or mass defect.
///
/// Between pulses both states disperse freely and the excited state winds
/// with the two-photon detuning of the laser frame, `exp(-i delta t)`. The
/// pulses keep the drift of the mean evolution so the result refers to the
/// laboratory frame. Paths are grouped by the state after the first pulse:
/// `lower` stayed in `g`, `upper` went to `e`.
pub fn clock_mach_zehnder(
    coeffs: &PulseCoefficients<f64>,
    gap: f64,
    splitting: bool,
) -> Result<[PortBranches; 2], InterferometerError> {
    if !gap.is_finite() || gap < 0.0 {
        return Err(InterferometerError::Timing(format!("gap must be finite and non-negative, got {gap}")));
    }
    let h = coeffs.hbar();
    let options = PulseOptions { splitting, keep_translation: true, gravity: 0.0 };
    let half = generalized_pulse(PulseKind::PiHalf, coeffs, options);
    let full = generalized_pulse(PulseKind::Pi, coeffs, options);
    let free = |s: InternalState| {
        let wind = if s == Excited { -coeffs.delta() * gap } else { 0.0 };
        Unitary::dispersion(gap / (2.0 * coeffs.mass()), h).then(&Unitary::global_phase("detuning", wind, h))
    };
    let one = Complex64::new(1.0, 0.0);
    let mut out = Vec::new();
    for port in [Ground, Excited] {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for s1 in [Ground, Excited] {
            for s2 in [Ground, Excited] {
                let mut paths = vec![Branch::new(one, Unitary::identity(h), "")];
                let mut state = Ground;
                for (n, (pulse, to)) in [(&half, s1), (&full, s2), (&half, port)].into_iter().enumerate() {
                    if n > 0 {
                        let op = free(state);
                        paths = paths.iter().map(|b| b.then(one, &op, "gap")).collect();
                    }
                    let cell = pulse.cell(to, state);
                    paths = paths.iter().flat_map(|b| cell.iter().map(move |c| b.then(c.weight, &c.op, &c.label))).collect();
                    state = to;
                }
                if s1 == Ground {
                    lower.extend(paths);
                } else {
                    upper.extend(paths);
                }
            }
        }
        out.push(PortBranches { port, lower, upper });
    }
    let [g, e]: [PortBranches; 2] = out.try_into().expect("two ports");
    Ok([g, e])
}
