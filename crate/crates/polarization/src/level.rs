use std::fmt;

use e1m1_core::Real;

use crate::field::{spherical, CVec3};
use crate::{Polarization, PolarizationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multipole {
    E1,
    M1,
}

impl fmt::Display for Multipole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Multipole::E1 => "E1",
            Multipole::M1 => "M1",
        })
    }
}

/// Russell-Saunders term with a single magnetic sublevel. Only integer
/// angular momenta are represented.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LevelSpec {
    label: String,
    l: u32,
    s: u32,
    j: u32,
    parity: Parity,
    m: i32,
}

impl LevelSpec {
    pub fn new(label: impl Into<String>, l: u32, s: u32, j: u32, parity: Parity, m: i32) -> Result<Self, PolarizationError> {
        let label = label.into();
        if m.unsigned_abs() > j {
            return Err(PolarizationError::MagneticNumber { label, m, j });
        }
        if j < l.abs_diff(s) || j > l + s {
            return Err(PolarizationError::AngularMomentum { label, l, s, j });
        }
        Ok(Self { label, l, s, j, parity, m })
    }

    /// `1S0`, even parity.
    pub fn ground() -> Self {
        Self { label: "g".into(), l: 0, s: 0, j: 0, parity: Parity::Even, m: 0 }
    }

    /// `3P1` with the sublevel reached from the ground state by a sigma+
    /// photon and left towards `3P0` by a sigma- photon.
    pub fn ancilla() -> Self {
        Self { label: "a".into(), l: 1, s: 1, j: 1, parity: Parity::Odd, m: 1 }
    }

    pub fn ancilla_with_m(m: i32) -> Result<Self, PolarizationError> {
        Self::new("a", 1, 1, 1, Parity::Odd, m)
    }

    /// `3P0`, odd parity.
    pub fn excited() -> Self {
        Self { label: "e".into(), l: 1, s: 1, j: 0, parity: Parity::Odd, m: 0 }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Spectroscopic symbol such as `3P1`.
    pub fn term_symbol(&self) -> String {
        let letter = ['S', 'P', 'D', 'F', 'G'].get(self.l as usize).copied().unwrap_or('?');
        format!("{}{}{}", 2 * self.s + 1, letter, self.j)
    }
}

/// Outcome of the selection-rule check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransitionCheck {
    pub allowed: bool,
    pub delta_m: i32,
    pub parity_ok: bool,
    pub delta_l_ok: bool,
    pub delta_j_ok: bool,
    pub delta_m_ok: bool,
}

/// Dipole selection rules for absorption of one photon taking `from` to `to`.
///
/// `Polarization::Linear` stands for light polarized along the quantization
/// axis here, which leaves `M` unchanged.
pub fn transition_allowed(from: &LevelSpec, to: &LevelSpec, multipole: Multipole, polarization: Polarization) -> TransitionCheck {
    let delta_m = to.m - from.m;
    let same_parity = from.parity == to.parity;
    let dl = to.l as i32 - from.l as i32;
    let (parity_ok, delta_l_ok) = match multipole {
        Multipole::E1 => (!same_parity, dl.abs() == 1),
        Multipole::M1 => (same_parity, dl == 0),
    };
    let delta_j_ok = from.j.abs_diff(to.j) <= 1 && !(from.j == 0 && to.j == 0);
    let delta_m_ok = delta_m == polarization.delta_m();
    TransitionCheck {
        allowed: parity_ok && delta_l_ok && delta_j_ok && delta_m_ok,
        delta_m,
        parity_ok,
        delta_l_ok,
        delta_j_ok,
        delta_m_ok,
    }
}

/// Cartesian vector of the matrix element `<bra| op |ket>` of a rank-one
/// operator whose only nonzero spherical component is `q = M_bra - M_ket`
/// with reduced strength `magnitude`, i.e. the vector `v` with
/// `v . e_q = magnitude` and `v . e_{q'} = 0` otherwise.
pub fn matrix_element<T: Real>(bra: &LevelSpec, ket: &LevelSpec, magnitude: T) -> Result<CVec3<T>, PolarizationError> {
    let q = bra.m - ket.m;
    if q.abs() > 1 {
        return Err(PolarizationError::DeltaM { bra: bra.label.clone(), ket: ket.label.clone(), delta_m: q });
    }
    let sign = if q.rem_euclid(2) == 0 { T::one() } else { -T::one() };
    Ok(spherical::<T>(-q).map(|c| c * (sign * magnitude)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_ground_to_ancilla() {
        let c = transition_allowed(&LevelSpec::ground(), &LevelSpec::ancilla(), Multipole::E1, Polarization::SigmaPlus);
        assert!(c.allowed);
        assert_eq!(LevelSpec::ancilla().l() - LevelSpec::ground().l(), 1);
    }

    #[test]
    fn m1_ancilla_to_excited() {
        let c = transition_allowed(&LevelSpec::ancilla(), &LevelSpec::excited(), Multipole::M1, Polarization::SigmaMinus);
        assert!(c.allowed);
        assert_eq!(c.delta_m, -1);
        let wrong = transition_allowed(&LevelSpec::ancilla(), &LevelSpec::excited(), Multipole::E1, Polarization::SigmaMinus);
        assert!(!wrong.allowed && !wrong.parity_ok);
    }

    #[test]
    fn zero_to_zero_forbidden() {
        for mp in [Multipole::E1, Multipole::M1] {
            for pol in [Polarization::Linear, Polarization::SigmaPlus, Polarization::SigmaMinus] {
                assert!(!transition_allowed(&LevelSpec::ground(), &LevelSpec::excited(), mp, pol).allowed);
                assert!(!transition_allowed(&LevelSpec::ground(), &LevelSpec::ground(), mp, pol).allowed);
            }
        }
    }

    #[test]
    fn invalid_levels() {
        assert!(LevelSpec::new("x", 1, 1, 1, Parity::Odd, 2).is_err());
        assert!(LevelSpec::new("x", 0, 0, 1, Parity::Even, 0).is_err());
        assert_eq!(LevelSpec::ancilla().term_symbol(), "3P1");
    }

    #[test]
    fn matrix_element_picks_one_component() {
        let d = matrix_element(&LevelSpec::ancilla(), &LevelSpec::ground(), 2.0f64).unwrap();
        let on = crate::dot(&d, &spherical(1));
        let off = crate::dot(&d, &spherical(-1));
        assert!((on.re - 2.0).abs() < 1e-15 && on.im.abs() < 1e-15);
        assert!(off.norm() < 1e-15);
        assert!(crate::dot(&d, &spherical(0)).norm() < 1e-15);
    }
}
