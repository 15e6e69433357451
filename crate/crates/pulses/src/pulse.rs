use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use e1m1_beam::PulseCoefficients;
use e1m1_core::{InternalState, Vec3};
use e1m1_phasespace::{PhaseLedger, Unitary, WeightedBranch};
use num_complex::Complex64;

use crate::PulseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseKind {
    Pi,
    PiHalf,
}

impl PulseKind {
    /// Pulse area `tau = Omega0 t`.
    pub fn area(self) -> f64 {
        match self {
            Self::Pi => PI,
            Self::PiHalf => FRAC_PI_2,
        }
    }

    /// Factor multiplying `nu(P)/Omega0` inside the sines and cosines.
    fn argument_scale(self) -> f64 {
        match self {
            Self::Pi => 1.0,
            Self::PiHalf => FRAC_1_SQRT_2,
        }
    }

    /// Cell `(final, initial)` written as `alpha cos y + beta sin y`.
    fn trig_coefficients(self, f: usize, i: usize) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let i_ = Complex64::i();
        match (self, f, i) {
            (Self::Pi, 0, 0) => (zero, -i_),
            (Self::Pi, 1, 1) => (zero, i_),
            (Self::Pi, _, _) => (-i_, zero),
            (Self::PiHalf, 0, 0) => (FRAC_1_SQRT_2.into(), -i_),
            (Self::PiHalf, 1, 1) => (FRAC_1_SQRT_2.into(), i_),
            (Self::PiHalf, _, _) => (-i_ * FRAC_1_SQRT_2, zero),
        }
    }
}

impl fmt::Display for PulseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pi => "pi",
            Self::PiHalf => "pi2",
        })
    }
}

impl FromStr for PulseKind {
    type Err = PulseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pi" => Ok(Self::Pi),
            "pi2" | "pi/2" | "pi_half" | "pihalf" => Ok(Self::PiHalf),
            other => Err(PulseError::UnsupportedKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseOptions {
    /// Expand the sines and cosines of `nu(P)/Omega0` into pairs of
    /// position shifts instead of taking their small-argument limit.
    pub splitting: bool,
    /// Keep the translation `hbar k t / (2M)` of the mean evolution.
    pub keep_translation: bool,
    /// Gravitational acceleration of the displacement frame.
    pub gravity: f64,
}

impl Default for PulseOptions {
    fn default() -> Self {
        Self { splitting: false, keep_translation: false, gravity: 0.0 }
    }
}

fn index(s: InternalState) -> usize {
    match s {
        InternalState::Excited => 0,
        InternalState::Ground => 1,
    }
}

/// A pulse as a `2x2` grid, rows final and columns initial internal state
/// (`e` first), of weighted canonical unitaries acting on the centre of
/// mass.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseOperatorBranches {
    pub kind: PulseKind,
    pub duration: f64,
    pub splitting: bool,
    cells: [[Vec<WeightedBranch<f64>>; 2]; 2],
    reference: Unitary,
}

impl PulseOperatorBranches {
    pub fn cell(&self, to: InternalState, from: InternalState) -> &[WeightedBranch<f64>] {
        &self.cells[index(to)][index(from)]
    }

    pub fn cells(&self) -> &[[Vec<WeightedBranch<f64>>; 2]; 2] {
        &self.cells
    }

    /// Free evolution `D(t) U_bar'(t)` the cells reduce to without light.
    pub fn reference(&self) -> &Unitary {
        &self.reference
    }

    /// Image of `|p>` in one cell: the output momentum and its amplitude.
    /// All branches of a cell share the output momentum.
    pub fn momentum_amplitude(&self, to: InternalState, from: InternalState, p: Vec3<f64>) -> (Vec3<f64>, Complex64) {
        let cell = self.cell(to, from);
        let mut out = p;
        let mut amp = Complex64::new(0.0, 0.0);
        for br in cell {
            let (q, phase) = br.op.act_on_momentum(p);
            out = q;
            amp += br.weight * phase;
        }
        (out, amp)
    }

    /// Internal-state matrix on `|p>`, each cell divided by the reference
    /// free evolution.
    pub fn internal_matrix(&self, p: Vec3<f64>) -> [[Complex64; 2]; 2] {
        let (_, r) = self.reference.act_on_momentum(p);
        let states = [InternalState::Excited, InternalState::Ground];
        states.map(|to| states.map(|from| self.momentum_amplitude(to, from, p).1 / r))
    }

    /// `sum_f |<f, p'| U |i, p>|^2` for an input internal state.
    pub fn transfer_norm(&self, from: InternalState, p: Vec3<f64>) -> f64 {
        [InternalState::Excited, InternalState::Ground]
            .iter()
            .map(|&to| self.momentum_amplitude(to, from, p).1.norm_sqr())
            .sum()
    }
}

/// Builds the generalized pulse operator
/// `U(tau) = D(t) U_1 U_bar(tau) U_Omega(tau) U_3(tau) U_1^dagger D^dagger(0)`
/// with `U_3` taken without its quadratic terms.
///
/// `U_1 = diag(exp(i Phi(0)) exp(i k Z), 1)` carries the effective kick,
/// `D(t)` the gravitational displacement and `U_bar` the mean evolution
/// (dispersion, optional translation and the constant light-shift phase;
/// the rest energy is common to every cell and left out). The product
/// `U_Omega U_3` is a function of `P_z` through
/// `y = s (nu(P) + D0) / Omega0`, with `s = 1` for pi and `1/sqrt 2` for
/// pi/2. With splitting each `cos y` and `sin y` becomes the two shifts
/// `exp(+-i s xi P_z / hbar)`, `xi = hbar k / (M Omega0)`; without it the
/// cells hold their `y -> 0` limits.
pub fn generalized_pulse(kind: PulseKind, coeffs: &PulseCoefficients<f64>, options: PulseOptions) -> PulseOperatorBranches {
    let hbar = coeffs.hbar();
    let mass = coeffs.mass();
    let k = coeffs.k();
    let omega0 = coeffs.omega0();
    let t = kind.area() / omega0;

    let d = Unitary::gravity_displacement(mass, options.gravity, t, hbar, "gravity");
    let kick = Unitary::from_parts(PhaseLedger::single("laser", coeffs.phase0()), [0.0, 0.0, hbar * k], [0.0; 3], 0.0, hbar);
    let unkick = kick.inverse();
    let translation = if options.keep_translation { hbar * k * t / (2.0 * mass) } else { 0.0 };
    let mean_phase = -t * (coeffs.omega_k() + coeffs.delta() - coeffs.omega_ac_plus0()) / 2.0;
    let ubar = Unitary::from_parts(PhaseLedger::single("mean", mean_phase), [0.0; 3], [0.0, 0.0, translation], t / (2.0 * mass), hbar);
    let identity = Unitary::identity(hbar);

    let s = kind.argument_scale();
    let xi = s * hbar * k / (mass * omega0);
    let offset = s * coeffs.detuning_constant() / omega0;
    // exp(+i y) and exp(-i y) as canonical unitaries
    let plus = Unitary::global_phase("detuning", offset, hbar).then(&Unitary::shift([0.0, 0.0, -xi], hbar));
    let minus = Unitary::global_phase("detuning", -offset, hbar).then(&Unitary::shift([0.0, 0.0, xi], hbar));

    let names = ["e", "g"];
    let cells = [0, 1].map(|f| {
        [0, 1].map(|i| {
            let pre = if i == 0 { &unkick } else { &identity };
            let post = if f == 0 { &kick } else { &identity };
            let wrap = |core: &Unitary| pre.then(core).then(&ubar).then(post).then(&d);
            let label = format!("{kind}:{}{}", names[f], names[i]);
            let (alpha, beta) = kind.trig_coefficients(f, i);
            if options.splitting {
                let half_i = Complex64::new(0.0, 0.5);
                vec![
                    WeightedBranch::new(alpha / 2.0 - half_i * beta, wrap(&plus), format!("{label}+")),
                    WeightedBranch::new(alpha / 2.0 + half_i * beta, wrap(&minus), format!("{label}-")),
                ]
            } else {
                vec![WeightedBranch::new(alpha, wrap(&identity), label)]
            }
        })
    });
    PulseOperatorBranches { kind, duration: t, splitting: options.splitting, cells, reference: ubar.then(&d) }
}

/// Ratio of the branch-splitting displacement `hbar k / (M Omega0)` to the
/// kick displacement `hbar k T / M` accumulated over a time `T`.
pub fn splitting_ratio(coeffs: &PulseCoefficients<f64>, interval: f64) -> f64 {
    let split = coeffs.hbar() * coeffs.k() / (coeffs.mass() * coeffs.omega0());
    let kick = coeffs.hbar() * coeffs.k() * interval / coeffs.mass();
    split / kick
}
