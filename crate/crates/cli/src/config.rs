//! TOML run configuration. Every physical key carries its SI unit as a
//! suffix (`_m`, `_s`, `_kg`, `_rad_s`, ...). Missing keys fall back to the
//! preset catalog; unknown keys are errors.

use std::collections::BTreeSet;
use std::path::PathBuf;

use e1m1_core::{presets, AtomSpecies, InternalState, C_SI, HBAR_SI};
use toml::{Table, Value};

use crate::{CliError, Issue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    A,
    B,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::A => "a",
            Scheme::B => "b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseChoice {
    Pi,
    PiHalf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomConfig {
    pub mass_kg: f64,
    pub epsilon: f64,
    pub initial_state: InternalState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeamConfig {
    pub waist_m: f64,
    pub rayleigh_length_m: f64,
    /// When given, must satisfy `z_R = pi w0^2 / lambda`.
    pub wavelength_m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CouplingConfig {
    pub rabi_rad_s: f64,
    pub ac_stark_plus_rad_s: f64,
    pub ac_stark_minus_rad_s: f64,
    /// Two-photon detuning; the compensating value when absent.
    pub detuning_rad_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WavepacketConfig {
    pub position_width_m: f64,
    pub mean_momentum_kg_m_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceConfig {
    pub scheme: Scheme,
    pub t0_s: f64,
    pub delta_t_s: f64,
    pub t2_s: f64,
    pub t3_s: f64,
    pub tau_s: f64,
    pub big_t_s: f64,
    pub bragg_wavenumber_per_m: f64,
    /// Optional check value for the E1-M1 pulse length of the scheme.
    pub pulse_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericsConfig {
    pub splitting: bool,
    pub pulse_kind: PulseChoice,
    pub rabi_duration_s: Option<f64>,
    pub rabi_samples: usize,
    pub pulse_samples: usize,
    /// Half width of the `pulse` momentum scan in units of the packet width.
    pub pulse_momentum_span: f64,
    pub beam_samples: usize,
    /// Largest `|Z/z_R|` of the `beam` scan.
    pub beam_span: f64,
    pub grid_points: usize,
    pub grid_length_m: Option<f64>,
    pub steps: usize,
    pub trace_samples: usize,
    pub tolerance: f64,
    /// Include gravity in the grid oracle; off by default because the
    /// gravitational momentum over a pulse usually dwarfs the packet width.
    pub oracle_gravity: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub plot_script: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub atom: AtomConfig,
    pub beam: BeamConfig,
    pub couplings: CouplingConfig,
    pub gravity_m_s2: f64,
    pub wavepacket: WavepacketConfig,
    pub sequence: SequenceConfig,
    pub numerics: NumericsConfig,
    pub output: OutputConfig,
}

fn preset(name: &str) -> f64 {
    presets::lookup(name).map(|p| p.value).unwrap_or(f64::NAN)
}

/// Mass defect ratio `hbar omega / (M c^2)` of the preset clock transition.
fn preset_epsilon() -> f64 {
    let omega = 2.0 * std::f64::consts::PI * C_SI / preset("clock_wavelength");
    HBAR_SI * omega / (preset("mass") * C_SI * C_SI)
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("atom", &["mass_kg", "epsilon", "initial_state"]),
    ("beam", &["waist_m", "rayleigh_length_m", "wavelength_m"]),
    ("couplings", &["rabi_rad_s", "ac_stark_plus_rad_s", "ac_stark_minus_rad_s", "detuning_rad_s"]),
    ("gravity", &["g_m_s2"]),
    ("wavepacket", &["position_width_m", "mean_momentum_kg_m_s"]),
    ("sequence", &["scheme", "t0_s", "delta_t_s", "t2_s", "t3_s", "tau_s", "big_t_s", "bragg_wavenumber_per_m", "pulse_time_s"]),
    (
        "numerics",
        &[
            "splitting",
            "pulse_kind",
            "rabi_duration_s",
            "rabi_samples",
            "pulse_samples",
            "pulse_momentum_span",
            "beam_samples",
            "beam_span",
            "grid_points",
            "grid_length_m",
            "steps",
            "trace_samples",
            "tolerance",
            "oracle_gravity",
        ],
    ),
    ("output", &["directory", "plot_script"]),
];

/// Whether `path` (`section.key`) names a configuration field.
pub fn is_known_key(path: &str) -> bool {
    match path.split_once('.') {
        Some((s, k)) => SECTIONS.iter().any(|(name, keys)| *name == s && keys.contains(&k)),
        None => false,
    }
}

/// Parses TOML text into a raw table, reporting syntax errors with their
/// line number.
pub fn parse_table(text: &str) -> Result<Table, CliError> {
    text.parse::<Table>().map_err(|e| {
        let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1).unwrap_or(1);
        CliError::Validation(vec![Issue::syntax(line, e.message().to_string())])
    })
}

/// Parses and validates a configuration, collecting every violation.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    RunConfig::from_table(&parse_table(text)?)
}

/// Sets `section.key = value` in a raw table. The value is read as a TOML
/// literal and taken as a bare string when it is not one.
pub fn apply_override(table: &mut Table, assignment: &str) -> Result<(), CliError> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::invalid(assignment, "override must look like section.key=value"))?;
    let path = path.trim();
    let (section, key) = path.split_once('.').ok_or_else(|| CliError::invalid(path, "override key must be section.key"))?;
    let value = parse_value(raw.trim());
    let entry = table.entry(section.to_string()).or_insert_with(|| Value::Table(Table::new()));
    match entry {
        Value::Table(t) => {
            t.insert(key.to_string(), value);
            Ok(())
        }
        _ => Err(CliError::invalid(section, "is not a section")),
    }
}

pub fn parse_value(raw: &str) -> Value {
    format!("v = {raw}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(raw.to_string()))
}

struct Reader<'a> {
    root: &'a Table,
    issues: Vec<Issue>,
    seen: BTreeSet<String>,
}

impl<'a> Reader<'a> {
    fn get(&mut self, section: &str, key: &str) -> Option<&'a Value> {
        self.seen.insert(format!("{section}.{key}"));
        self.root.get(section)?.as_table()?.get(key)
    }

    fn opt_float(&mut self, section: &str, key: &str) -> Option<f64> {
        match self.get(section, key)? {
            Value::Float(x) => Some(*x),
            Value::Integer(n) => Some(*n as f64),
            other => {
                self.issues.push(Issue::at(format!("{section}.{key}"), format!("expected a number, got {}", other.type_str())));
                None
            }
        }
    }

    fn float(&mut self, section: &str, key: &str, default: f64) -> f64 {
        self.opt_float(section, key).unwrap_or(default)
    }

    fn count(&mut self, section: &str, key: &str, default: usize) -> usize {
        match self.get(section, key) {
            None => default,
            Some(Value::Integer(n)) if *n >= 0 => *n as usize,
            Some(other) => {
                self.issues.push(Issue::at(format!("{section}.{key}"), format!("expected a non-negative integer, got {other}")));
                default
            }
        }
    }

    fn flag(&mut self, section: &str, key: &str, default: bool) -> bool {
        match self.get(section, key) {
            None => default,
            Some(Value::Boolean(b)) => *b,
            Some(other) => {
                self.issues.push(Issue::at(format!("{section}.{key}"), format!("expected true or false, got {other}")));
                default
            }
        }
    }

    fn text(&mut self, section: &str, key: &str) -> Option<String> {
        match self.get(section, key)? {
            Value::String(s) => Some(s.clone()),
            other => {
                self.issues.push(Issue::at(format!("{section}.{key}"), format!("expected a string, got {other}")));
                None
            }
        }
    }

    fn choice<T: Copy>(&mut self, section: &str, key: &str, options: &[(&str, T)], default: T) -> T {
        let Some(s) = self.text(section, key) else { return default };
        match options.iter().find(|(name, _)| name.eq_ignore_ascii_case(&s)) {
            Some((_, v)) => *v,
            None => {
                let names: Vec<_> = options.iter().map(|(n, _)| *n).collect();
                self.issues.push(Issue::at(format!("{section}.{key}"), format!("unknown value {s:?}, expected one of {names:?}")));
                default
            }
        }
    }

    fn unknown_keys(&mut self) {
        for (section, value) in self.root {
            let Some(keys) = SECTIONS.iter().find(|(s, _)| s == section).map(|(_, k)| *k) else {
                self.issues.push(Issue::at(section.clone(), "unknown section"));
                continue;
            };
            match value.as_table() {
                Some(t) => {
                    for key in t.keys() {
                        if !keys.contains(&key.as_str()) {
                            self.issues.push(Issue::at(format!("{section}.{key}"), "unknown key"));
                        }
                    }
                }
                None => self.issues.push(Issue::at(section.clone(), "expected a section")),
            }
        }
    }
}

impl RunConfig {
    /// Configuration built from the preset catalog alone.
    pub fn defaults() -> Self {
        Self::from_table(&Table::new()).expect("preset configuration is valid")
    }

    pub fn from_table(root: &Table) -> Result<Self, CliError> {
        let mut r = Reader { root, issues: Vec::new(), seen: BTreeSet::new() };
        let states = [("g", InternalState::Ground), ("e", InternalState::Excited)];
        let cfg = RunConfig {
            atom: AtomConfig {
                mass_kg: r.float("atom", "mass_kg", preset("mass")),
                epsilon: r.float("atom", "epsilon", preset_epsilon()),
                initial_state: r.choice("atom", "initial_state", &states, InternalState::Ground),
            },
            beam: BeamConfig {
                waist_m: r.float("beam", "waist_m", preset("beam_waist")),
                rayleigh_length_m: r.float("beam", "rayleigh_length_m", preset("rayleigh_length")),
                wavelength_m: r.opt_float("beam", "wavelength_m"),
            },
            couplings: CouplingConfig {
                rabi_rad_s: r.float("couplings", "rabi_rad_s", preset("rabi_two_photon")),
                ac_stark_plus_rad_s: r.float("couplings", "ac_stark_plus_rad_s", preset("rabi_two_photon")),
                ac_stark_minus_rad_s: r.float("couplings", "ac_stark_minus_rad_s", 0.5 * preset("rabi_two_photon")),
                detuning_rad_s: r.opt_float("couplings", "detuning_rad_s"),
            },
            gravity_m_s2: r.float("gravity", "g_m_s2", preset("gravity")),
            wavepacket: WavepacketConfig {
                position_width_m: r.float("wavepacket", "position_width_m", 1e-4),
                mean_momentum_kg_m_s: r.float("wavepacket", "mean_momentum_kg_m_s", 0.0),
            },
            sequence: SequenceConfig {
                scheme: r.choice("sequence", "scheme", &[("a", Scheme::A), ("b", Scheme::B)], Scheme::A),
                t0_s: r.float("sequence", "t0_s", 0.0),
                delta_t_s: r.float("sequence", "delta_t_s", 0.05),
                t2_s: r.float("sequence", "t2_s", 0.1),
                t3_s: r.float("sequence", "t3_s", 0.3),
                tau_s: r.float("sequence", "tau_s", 0.02),
                big_t_s: r.float("sequence", "big_t_s", 0.2),
                bragg_wavenumber_per_m: r.float("sequence", "bragg_wavenumber_per_m", 1.6e7),
                pulse_time_s: r.opt_float("sequence", "pulse_time_s"),
            },
            numerics: NumericsConfig {
                splitting: r.flag("numerics", "splitting", false),
                pulse_kind: r.choice("numerics", "pulse_kind", &[("pi", PulseChoice::Pi), ("pi2", PulseChoice::PiHalf)], PulseChoice::Pi),
                rabi_duration_s: r.opt_float("numerics", "rabi_duration_s"),
                rabi_samples: r.count("numerics", "rabi_samples", 200),
                pulse_samples: r.count("numerics", "pulse_samples", 101),
                pulse_momentum_span: r.float("numerics", "pulse_momentum_span", 3.0),
                beam_samples: r.count("numerics", "beam_samples", 601),
                beam_span: r.float("numerics", "beam_span", 0.3),
                grid_points: r.count("numerics", "grid_points", 1024),
                grid_length_m: r.opt_float("numerics", "grid_length_m"),
                steps: r.count("numerics", "steps", 2000),
                trace_samples: r.count("numerics", "trace_samples", 100),
                tolerance: r.float("numerics", "tolerance", 1e-6),
                oracle_gravity: r.flag("numerics", "oracle_gravity", false),
            },
            output: OutputConfig {
                directory: PathBuf::from(r.text("output", "directory").unwrap_or_else(|| ".".into())),
                plot_script: r.flag("output", "plot_script", false),
            },
        };
        r.unknown_keys();
        let mut issues = r.issues;
        issues.extend(cfg.constraint_issues());
        if issues.is_empty() {
            issues.extend(crate::model::Model::build(&cfg).err().unwrap_or_default());
        }
        if issues.is_empty() {
            Ok(cfg)
        } else {
            Err(CliError::Validation(issues))
        }
    }

    /// Single-field and cross-field constraints that do not need the
    /// physics model.
    fn constraint_issues(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        let mut positive = |path: &str, v: f64| {
            if !(v.is_finite() && v > 0.0) {
                out.push(Issue::at(path, format!("must be positive and finite, got {v}")));
            }
        };
        positive("atom.mass_kg", self.atom.mass_kg);
        positive("beam.waist_m", self.beam.waist_m);
        positive("beam.rayleigh_length_m", self.beam.rayleigh_length_m);
        if let Some(l) = self.beam.wavelength_m {
            positive("beam.wavelength_m", l);
        }
        positive("couplings.rabi_rad_s", self.couplings.rabi_rad_s);
        positive("wavepacket.position_width_m", self.wavepacket.position_width_m);
        positive("sequence.delta_t_s", self.sequence.delta_t_s);
        positive("sequence.big_t_s", self.sequence.big_t_s);
        positive("numerics.pulse_momentum_span", self.numerics.pulse_momentum_span);
        positive("numerics.beam_span", self.numerics.beam_span);
        positive("numerics.tolerance", self.numerics.tolerance);
        if let Some(d) = self.numerics.rabi_duration_s {
            positive("numerics.rabi_duration_s", d);
        }
        if let Some(l) = self.numerics.grid_length_m {
            positive("numerics.grid_length_m", l);
        }
        let eps_limit: f64 = AtomSpecies::<f64>::epsilon_limit();
        if !(self.atom.epsilon.is_finite() && self.atom.epsilon.abs() < eps_limit) {
            out.push(Issue::at("atom.epsilon", format!("must satisfy |epsilon| < {eps_limit}, got {}", self.atom.epsilon)));
        }
        let finite = [
            ("couplings.ac_stark_plus_rad_s", self.couplings.ac_stark_plus_rad_s),
            ("couplings.ac_stark_minus_rad_s", self.couplings.ac_stark_minus_rad_s),
            ("couplings.detuning_rad_s", self.couplings.detuning_rad_s.unwrap_or(0.0)),
            ("wavepacket.mean_momentum_kg_m_s", self.wavepacket.mean_momentum_kg_m_s),
            ("sequence.t0_s", self.sequence.t0_s),
            ("sequence.t2_s", self.sequence.t2_s),
            ("sequence.t3_s", self.sequence.t3_s),
            ("sequence.bragg_wavenumber_per_m", self.sequence.bragg_wavenumber_per_m),
        ];
        for (path, v) in finite {
            if !v.is_finite() {
                out.push(Issue::at(path, format!("must be finite, got {v}")));
            }
        }
        if !(self.gravity_m_s2.is_finite() && self.gravity_m_s2 >= 0.0) {
            out.push(Issue::at("gravity.g_m_s2", format!("must be finite and non-negative, got {}", self.gravity_m_s2)));
        }
        if !(self.sequence.tau_s.is_finite() && self.sequence.tau_s >= 0.0) {
            out.push(Issue::at("sequence.tau_s", format!("must be finite and non-negative, got {}", self.sequence.tau_s)));
        }
        if let Some(t) = self.sequence.pulse_time_s {
            if !(t.is_finite() && t >= 0.0) {
                out.push(Issue::at("sequence.pulse_time_s", format!("must be finite and non-negative, got {t}")));
            }
        }
        if let (Some(lambda), true) = (self.beam.wavelength_m, self.beam.waist_m > 0.0) {
            let expected = std::f64::consts::PI * self.beam.waist_m.powi(2) / lambda;
            if ((self.beam.rayleigh_length_m - expected) / expected).abs() > 1e-6 {
                out.push(Issue::at(
                    "beam.rayleigh_length_m",
                    format!("z_R = {} differs from pi w0^2 / lambda = {expected} by more than 1e-6 relative", self.beam.rayleigh_length_m),
                ));
            }
        }
        let n = &self.numerics;
        for (path, v, min) in [
            ("numerics.rabi_samples", n.rabi_samples, 1),
            ("numerics.pulse_samples", n.pulse_samples, 1),
            ("numerics.beam_samples", n.beam_samples, 2),
            ("numerics.steps", n.steps, 1),
            ("numerics.trace_samples", n.trace_samples, 1),
        ] {
            if v < min {
                out.push(Issue::at(path, format!("must be at least {min}, got {v}")));
            }
        }
        if n.trace_samples > 0 && n.steps % n.trace_samples != 0 {
            out.push(Issue::at("numerics.trace_samples", format!("must divide numerics.steps = {}", n.steps)));
        }
        if n.grid_points < 4 || !n.grid_points.is_power_of_two() {
            out.push(Issue::at("numerics.grid_points", format!("must be a power of two >= 4, got {}", n.grid_points)));
        }
        if n.beam_span >= 1.0 {
            out.push(Issue::at("numerics.beam_span", "the expansions need |Z/z_R| < 1"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_values_are_typed() {
        let mut t = Table::new();
        apply_override(&mut t, "atom.epsilon=1e-3").unwrap();
        apply_override(&mut t, "sequence.scheme=b").unwrap();
        apply_override(&mut t, "numerics.splitting = true").unwrap();
        assert_eq!(t["atom"]["epsilon"].as_float(), Some(1e-3));
        assert_eq!(t["sequence"]["scheme"].as_str(), Some("b"));
        assert_eq!(t["numerics"]["splitting"].as_bool(), Some(true));
        assert!(apply_override(&mut t, "epsilon").is_err());
    }

    #[test]
    fn known_keys() {
        assert!(is_known_key("beam.waist_m"));
        assert!(!is_known_key("beam.waist"));
        assert!(!is_known_key("waist_m"));
    }
}
