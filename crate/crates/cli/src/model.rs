//! Translation of an SI configuration into the internal unit system used by
//! the physics crates: mass unit `M`, time unit `1/Omega0`, and the length
//! for which hbar is one.

use std::f64::consts::{FRAC_PI_2, PI};

use e1m1_beam::{Beam, PulseCoefficients, EXPANSION_LIMIT};
use e1m1_core::{AtomSpecies, Dimension, GaussianWavepacket, InternalState, UnitSystem};
use e1m1_interferometer::{SchemeASequence, SchemeBSequence, Setup};

use crate::config::{RunConfig, Scheme};
use crate::Issue;

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub units: UnitSystem<f64>,
    pub setup: Setup,
    pub scheme: Scheme,
    pub scheme_a: Option<SchemeASequence>,
    pub scheme_b: Option<SchemeBSequence>,
}

impl Model {
    pub fn build(cfg: &RunConfig) -> Result<Self, Vec<Issue>> {
        let mut issues = Vec::new();
        let units = UnitSystem::natural(cfg.atom.mass_kg, cfg.couplings.rabi_rad_s).map_err(|e| vec![Issue::at("atom.mass_kg", e.to_string())])?;
        let to = |v: f64, d: Dimension| units.to_internal(v, d);
        let h = units.hbar();
        let species = AtomSpecies::from_epsilon(1.0, cfg.atom.epsilon, h).map_err(|e| vec![Issue::at("atom.epsilon", e.to_string())])?;
        let z_r = to(cfg.beam.rayleigh_length_m, Dimension::LENGTH);
        let beam = Beam::from_waist_and_rayleigh(to(cfg.beam.waist_m, Dimension::LENGTH), z_r).map_err(|e| vec![Issue::at("beam", e.to_string())])?;
        let c = &cfg.couplings;
        let rate = |v: f64| to(v, Dimension::FREQUENCY);
        let coeffs = PulseCoefficients::from_rates(beam, 1.0, h, rate(c.rabi_rad_s), rate(c.ac_stark_plus_rad_s), rate(c.ac_stark_minus_rad_s), 0.0);
        let coeffs = match c.detuning_rad_s {
            Some(d) => coeffs.with_delta(rate(d)),
            None => coeffs.compensated(),
        };
        let sigma_z = to(cfg.wavepacket.position_width_m, Dimension::LENGTH);
        if (sigma_z / z_r).powi(2) > EXPANSION_LIMIT {
            issues.push(Issue::at(
                "wavepacket.position_width_m",
                format!("<Z^2>/z_R^2 = {:.3e} exceeds the expansion limit {EXPANSION_LIMIT}", (sigma_z / z_r).powi(2)),
            ));
        }
        let dp = h / (2.0 * sigma_z);
        let p0 = to(cfg.wavepacket.mean_momentum_kg_m_s, Dimension::MOMENTUM);
        let psi = GaussianWavepacket::new([0.0, 0.0, p0], [dp; 3], [0.0; 3]).map_err(|e| vec![Issue::at("wavepacket", e.to_string())])?;
        let g = to(cfg.gravity_m_s2, Dimension::ACCELERATION);
        let setup = Setup::new(species, g, psi, coeffs)
            .map_err(|e| vec![Issue::at("atom", e.to_string())])?
            .with_splitting(cfg.numerics.splitting);

        let s = &cfg.sequence;
        let time = |v: f64| to(v, Dimension::TIME);
        let k_p = to(s.bragg_wavenumber_per_m, Dimension::WAVENUMBER);
        let area = match s.scheme {
            Scheme::A => FRAC_PI_2,
            Scheme::B => PI,
        };
        if let Some(t) = s.pulse_time_s {
            let expected = area / c.rabi_rad_s;
            if (t - expected).abs() > 1e-6 * expected {
                issues.push(Issue::at("sequence.pulse_time_s", format!("pulse of area {area} lasts {expected} s at this Rabi frequency, got {t} s")));
            }
        }
        let t_pulse = area / rate(c.rabi_rad_s);
        let (mut scheme_a, mut scheme_b) = (None, None);
        match s.scheme {
            Scheme::A => match SchemeASequence::new(time(s.t0_s), time(s.delta_t_s), time(s.t2_s), time(s.t3_s), t_pulse, k_p, time(s.tau_s)) {
                Ok(seq) => scheme_a = Some(seq),
                Err(e) => issues.push(Issue::at("sequence", e.to_string())),
            },
            Scheme::B => match SchemeBSequence::symmetric(time(s.t0_s), time(s.delta_t_s), time(s.big_t_s), t_pulse, k_p, cfg.atom.initial_state) {
                Ok(seq) => scheme_b = Some(seq),
                Err(e) => issues.push(Issue::at("sequence", e.to_string())),
            },
        }
        if issues.is_empty() {
            Ok(Self { units, setup, scheme: s.scheme, scheme_a, scheme_b })
        } else {
            Err(issues)
        }
    }

    pub fn time_si(&self, t: f64) -> f64 {
        self.units.to_si(t, Dimension::TIME)
    }

    pub fn initial_state(&self) -> InternalState {
        self.scheme_b.map(|s| s.initial_state).unwrap_or(InternalState::Ground)
    }
}
