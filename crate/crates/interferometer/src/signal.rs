use e1m1_core::{GaussianWavepacket, InternalState};
use e1m1_phasespace::{exit_signal, overlap_pairs, Branch};
use num_complex::Complex64;

/// Paths leading into one exit port, grouped by the arm they travel.
#[derive(Debug, Clone, PartialEq)]
pub struct PortBranches {
    pub port: InternalState,
    pub lower: Vec<Branch>,
    pub upper: Vec<Branch>,
}

impl PortBranches {
    pub fn all(&self) -> Vec<Branch> {
        self.lower.iter().chain(&self.upper).cloned().collect()
    }
}

/// One ordered pair `(l, m)` of paths and its share of the port signal.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTerm {
    pub l: String,
    pub m: String,
    pub visibility: f64,
    /// Unwrapped `arg <U_m^dagger U_l>`.
    pub phase: f64,
    pub weight: Complex64,
    /// `Re(w_m^* w_l <U_m^dagger U_l>)`.
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceResult {
    pub port: InternalState,
    pub intensity: f64,
    /// Contrast of the lower/upper interference, `|C| / sqrt(P_l P_u)`.
    pub visibility: f64,
    /// Phase of the lower arm relative to the upper one.
    pub delta_phi: f64,
    /// Squared norms of the lower and upper amplitudes.
    pub lower_norm: f64,
    pub upper_norm: f64,
    pub pairs: Vec<PairTerm>,
}

/// Port intensity `sum_lm w_m^* w_l <psi| U_m^dagger U_l |psi>` together
/// with the arm visibility and phase.
///
/// With several paths per arm the cross term `C` is a sum; its phase is
/// unwrapped around the pair with the largest contribution.
pub fn exit_port_intensity(branches: &PortBranches, psi: &GaussianWavepacket<f64>) -> InterferenceResult {
    let all = branches.all();
    let n_lower = branches.lower.len();
    let pairs = overlap_pairs(&all, psi);
    let intensity = exit_signal(&pairs);

    let mut lower_norm = 0.0;
    let mut upper_norm = 0.0;
    let mut cross = Complex64::new(0.0, 0.0);
    let mut lead: Option<&e1m1_phasespace::PairOverlap<f64>> = None;
    for p in &pairs {
        let c = p.contribution();
        match (p.l < n_lower, p.m < n_lower) {
            (true, true) => lower_norm += c.re,
            (false, false) => upper_norm += c.re,
            (true, false) => {
                cross += c;
                if lead.map_or(true, |q| c.norm() > q.contribution().norm()) {
                    lead = Some(p);
                }
            }
            (false, true) => {}
        }
    }
    let visibility = if lower_norm > 0.0 && upper_norm > 0.0 { cross.norm() / (lower_norm * upper_norm).sqrt() } else { 0.0 };
    let delta_phi = match lead {
        Some(p) if p.contribution().norm() > 0.0 => p.phase() + p.weight.arg() + (cross / p.contribution()).arg(),
        _ => 0.0,
    };
    let pairs = pairs
        .iter()
        .map(|p| PairTerm {
            l: all[p.l].label.clone(),
            m: all[p.m].label.clone(),
            visibility: p.visibility(),
            phase: p.phase(),
            weight: p.weight,
            contribution: p.contribution().re,
        })
        .collect();
    InterferenceResult { port: branches.port, intensity, visibility, delta_phi, lower_norm, upper_norm, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use e1m1_phasespace::Unitary;
    use std::f64::consts::PI;

    fn branch(phase: f64) -> Branch {
        let w = Complex64::new((1.0f64 / 32.0).sqrt(), 0.0);
        Branch::new(w, Unitary::global_phase("x", phase, 1.0), "")
    }

    fn two_path(phase: f64) -> InterferenceResult {
        let psi = GaussianWavepacket::new([0.0; 3], [1.0; 3], [0.0; 3]).unwrap();
        let port = PortBranches { port: InternalState::Ground, lower: vec![branch(phase)], upper: vec![branch(0.0)] };
        exit_port_intensity(&port, &psi)
    }

    #[test]
    fn in_phase_and_opposite_arms() {
        let r = two_path(0.0);
        assert!((r.intensity - 0.125).abs() < 1e-15);
        assert!((r.visibility - 1.0).abs() < 1e-15);
        let r = two_path(PI);
        assert!(r.intensity.abs() < 1e-15);
    }

    #[test]
    fn phase_is_unwrapped() {
        let r = two_path(40.0);
        assert!((r.delta_phi - 40.0).abs() < 1e-12);
        assert_eq!(r.pairs.len(), 4);
    }
}
