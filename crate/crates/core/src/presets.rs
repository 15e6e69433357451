//! Named parameter presets with their provenance.
//!
//! The catalog is plain text, one `name = value unit ; provenance` entry per
//! line, so that it can be shipped next to configuration files.

use std::fmt;

/// Where a preset value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Order-of-magnitude estimate for large-baseline atomic fountains.
    FountainMagnitude,
    /// Generic strontium-like clock atom.
    StrontiumLike,
    /// Exact SI defining constant.
    Defining,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Self::FountainMagnitude => "fountain-magnitude",
            Self::StrontiumLike => "strontium-like",
            Self::Defining => "si-defining",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "fountain-magnitude" => Some(Self::FountainMagnitude),
            "strontium-like" => Some(Self::StrontiumLike),
            "si-defining" => Some(Self::Defining),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub value: f64,
    pub unit: &'static str,
    pub provenance: Provenance,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:e} {} ; {}", self.name, self.value, self.unit, self.provenance.tag())
    }
}

const AMU: f64 = 1.660_539_066_60e-27;

pub const CATALOG: &[Preset] = &[
    Preset { name: "rabi_two_photon", value: 500.0, unit: "rad/s", provenance: Provenance::FountainMagnitude },
    Preset { name: "beam_waist", value: 1.0e-3, unit: "m", provenance: Provenance::FountainMagnitude },
    Preset { name: "rayleigh_length", value: 5.0, unit: "m", provenance: Provenance::FountainMagnitude },
    Preset { name: "mass", value: 87.905_612_5 * AMU, unit: "kg", provenance: Provenance::StrontiumLike },
    Preset { name: "clock_wavelength", value: 698.445_709_6e-9, unit: "m", provenance: Provenance::StrontiumLike },
    Preset { name: "gravity", value: 9.81, unit: "m/s^2", provenance: Provenance::StrontiumLike },
    Preset { name: "hbar", value: crate::HBAR_SI, unit: "J s", provenance: Provenance::Defining },
    Preset { name: "speed_of_light", value: crate::C_SI, unit: "m/s", provenance: Provenance::Defining },
];

pub fn lookup(name: &str) -> Option<&'static Preset> {
    CATALOG.iter().find(|p| p.name == name)
}

/// Text form of the whole catalog.
pub fn render() -> String {
    let mut out = String::new();
    for p in CATALOG {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

/// Parses one catalog line into `(name, value, unit, provenance)`.
pub fn parse_line(line: &str) -> Option<(String, f64, String, Provenance)> {
    let (lhs, prov) = line.split_once(';')?;
    let (name, rest) = lhs.split_once('=')?;
    let mut parts = rest.split_whitespace();
    let value = parts.next()?.parse().ok()?;
    let unit = parts.collect::<Vec<_>>().join(" ");
    Some((name.trim().to_string(), value, unit, Provenance::from_tag(prov.trim())?))
}
