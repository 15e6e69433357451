use e1m1_core::{lit, Real};
use num_complex::Complex;

use crate::field::{conj, CVec3};
use crate::{dot, transition_allowed, Direction, FieldComponent, LevelSpec, Multipole, PolarizationError};

/// Which single-photon amplitudes survive the polarization scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DopplerConfig {
    /// `Omega_E1 = Omega_B0 = 0`: the forward beam drives `g -> a`, the
    /// backward beam drives `a -> e`.
    Forward,
    /// `Omega_E0 = Omega_B1 = 0`.
    Mirrored,
    /// Cross terms present; the transition carries a net recoil.
    NotDopplerFree,
}

/// Single-photon Rabi frequencies `hbar Omega_Ei / 2 = -i d.E_i` and
/// `hbar Omega_Bi / 2 = -i mu.B_i*` for the forward (`i = 0`) and backward
/// (`i = 1`) beams, their counter-rotating partners built from `E_i*` and
/// `B_i`, and the single- and two-photon detunings.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSet<T> {
    omega_e: [Complex<T>; 2],
    omega_b: [Complex<T>; 2],
    counter_e: [Complex<T>; 2],
    counter_b: [Complex<T>; 2],
    delta: T,
    detuning: T,
    config: DopplerConfig,
}

fn classify<T: Real>(e: &[Complex<T>; 2], b: &[Complex<T>; 2]) -> DopplerConfig {
    let tol = lit::<T>(1e-12);
    let fwd = e[0].norm().max(b[1].norm());
    let mir = e[1].norm().max(b[0].norm());
    if mir <= tol * fwd || (fwd == T::zero() && mir == T::zero()) {
        DopplerConfig::Forward
    } else if fwd <= tol * mir {
        DopplerConfig::Mirrored
    } else {
        DopplerConfig::NotDopplerFree
    }
}

impl<T: Real> CouplingSet<T> {
    /// General set with explicit counter-rotating amplitudes.
    pub fn new(
        omega_e: [Complex<T>; 2],
        omega_b: [Complex<T>; 2],
        counter_e: [Complex<T>; 2],
        counter_b: [Complex<T>; 2],
        delta: T,
        detuning: T,
    ) -> Self {
        let config = classify(&omega_e, &omega_b);
        Self { omega_e, omega_b, counter_e, counter_b, delta, detuning, config }
    }

    /// Forward Doppler-free set as produced by a retro-reflected
    /// sigma+/sigma- pair with real reduced matrix elements, for which the
    /// counter-rotating amplitudes are `Omega_E1~ = Omega_E0*` and
    /// `Omega_B0~ = Omega_B1*`.
    pub fn doppler_free(omega_e0: Complex<T>, omega_b1: Complex<T>, delta: T, detuning: T) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new([omega_e0, z], [z, omega_b1], [z, omega_e0.conj()], [omega_b1.conj(), z], delta, detuning)
    }

    pub fn omega_e(&self) -> [Complex<T>; 2] {
        self.omega_e
    }

    pub fn omega_b(&self) -> [Complex<T>; 2] {
        self.omega_b
    }

    pub fn counter_rotating_e(&self) -> [Complex<T>; 2] {
        self.counter_e
    }

    pub fn counter_rotating_b(&self) -> [Complex<T>; 2] {
        self.counter_b
    }

    /// Single-photon detuning `omega_ag - omega`.
    pub fn delta(&self) -> T {
        self.delta
    }

    /// Two-photon detuning `omega_eg - 2 omega`.
    pub fn detuning(&self) -> T {
        self.detuning
    }

    pub fn config(&self) -> DopplerConfig {
        self.config
    }

    pub fn is_doppler_free(&self) -> bool {
        self.config != DopplerConfig::NotDopplerFree
    }

    /// The electric and magnetic amplitudes that drive the recoil-free
    /// transition, `(Omega_E0, Omega_B1)` or the mirrored pair.
    pub fn drive_pair(&self) -> Option<(Complex<T>, Complex<T>)> {
        match self.config {
            DopplerConfig::Forward => Some((self.omega_e[0], self.omega_b[1])),
            DopplerConfig::Mirrored => Some((self.omega_e[1], self.omega_b[0])),
            DopplerConfig::NotDopplerFree => None,
        }
    }

    pub fn with_detuning(&self, detuning: T) -> Self {
        Self { detuning, ..self.clone() }
    }

    pub fn with_delta(&self, delta: T) -> Self {
        Self { delta, ..self.clone() }
    }

    /// All amplitudes multiplied by `s`, detunings untouched.
    pub fn scaled(&self, s: T) -> Self {
        let m = |v: [Complex<T>; 2]| v.map(|c| c * s);
        Self {
            omega_e: m(self.omega_e),
            omega_b: m(self.omega_b),
            counter_e: m(self.counter_e),
            counter_b: m(self.counter_b),
            ..self.clone()
        }
    }
}

/// Rabi frequencies of a counter-propagating pair. Component order in the
/// result is forward (+Z) first regardless of input order.
pub fn coupling_set<T: Real>(
    fields: &[FieldComponent<T>],
    d_ag: &CVec3<T>,
    mu_ae: &CVec3<T>,
    delta: T,
    detuning: T,
    hbar: T,
) -> Result<CouplingSet<T>, PolarizationError> {
    if fields.len() != 2 {
        return Err(PolarizationError::ComponentCount(fields.len()));
    }
    if fields[0].direction() == fields[1].direction() {
        return Err(PolarizationError::CoPropagating(fields[0].direction().label()));
    }
    if fields[0].omega() != fields[1].omega() {
        return Err(PolarizationError::FrequencyMismatch(
            fields[0].omega().to_f64().unwrap_or(f64::NAN),
            fields[1].omega().to_f64().unwrap_or(f64::NAN),
        ));
    }
    let ordered = if fields[0].direction() == Direction::PlusZ { [&fields[0], &fields[1]] } else { [&fields[1], &fields[0]] };
    let factor = Complex::new(T::zero(), -lit::<T>(2.0) / hbar);
    let amp = |v: &CVec3<T>, f: &CVec3<T>| factor * dot(v, f);
    let omega_e = ordered.map(|f| amp(d_ag, f.electric()));
    let omega_b = ordered.map(|f| amp(mu_ae, &conj(f.magnetic())));
    let counter_e = ordered.map(|f| amp(d_ag, &conj(f.electric())));
    let counter_b = ordered.map(|f| amp(mu_ae, f.magnetic()));
    Ok(CouplingSet::new(omega_e, omega_b, counter_e, counter_b, delta, detuning))
}

/// One line of the coupling report.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingReportRow {
    pub multipole: Multipole,
    pub beam: usize,
    pub from: String,
    pub to: String,
    pub delta_m: i32,
    pub allowed: bool,
    pub rabi_abs: f64,
}

/// Selection-rule verdicts and amplitudes of the four single-photon
/// couplings. The photon helicity of each beam is the label of its electric
/// field, which is what fixes `dM` for both multipoles.
pub fn coupling_report<T: Real>(
    fields: &[FieldComponent<T>; 2],
    levels: (&LevelSpec, &LevelSpec, &LevelSpec),
    set: &CouplingSet<T>,
) -> Vec<CouplingReportRow> {
    let (g, a, e) = levels;
    let mut sorted = [&fields[0], &fields[1]];
    if sorted[0].direction() != Direction::PlusZ {
        sorted.swap(0, 1);
    }
    let mut rows = Vec::with_capacity(4);
    for (beam, f) in sorted.iter().enumerate() {
        let pol = f.polarization();
        for (mp, from, to, omega) in [
            (Multipole::E1, g, a, set.omega_e()[beam]),
            (Multipole::M1, a, e, set.omega_b()[beam]),
        ] {
            let check = transition_allowed(from, to, mp, pol);
            rows.push(CouplingReportRow {
                multipole: mp,
                beam,
                from: from.term_symbol(),
                to: to.term_symbol(),
                delta_m: check.delta_m,
                allowed: check.allowed,
                rabi_abs: omega.norm().to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    rows
}
