use e1m1_core::{lit, Axis, GaussianWavepacket, Real};
use e1m1_polarization::CouplingSet;
use num_complex::Complex;

use crate::{Kinematics, Monomial, OpTable, TwoLevelError};

/// Coupling column `Omega(Z)` mapping the ancilla onto `(e, g)`, including the
/// counter-rotating contributions at `exp(+-2 i omega t)`.
pub fn coupling_column<T: Real>(c: &CouplingSet<T>) -> [OpTable<T>; 2] {
    let half = lit::<T>(0.5);
    let (e, b) = (c.omega_e(), c.omega_b());
    let (te, tb) = (c.counter_rotating_e(), c.counter_rotating_b());
    let w = Monomial::wave;
    let mut ex = OpTable::zero();
    ex.push(w(1, 0), b[0].conj() * half);
    ex.push(w(-1, 0), b[1].conj() * half);
    ex.push(w(-1, 1), -tb[0].conj() * half);
    ex.push(w(1, 1), -tb[1].conj() * half);
    let mut gr = OpTable::zero();
    gr.push(w(-1, 0), e[0].conj() * half);
    gr.push(w(1, 0), e[1].conj() * half);
    gr.push(w(1, -1), -te[0].conj() * half);
    gr.push(w(-1, -1), -te[1].conj() * half);
    [ex, gr]
}

/// One order `Pi_k` of the quasi projector, a row acting on `(e, g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectorTerm<T> {
    pub order: usize,
    pub row: [OpTable<T>; 2],
}

impl<T: Real> ProjectorTerm<T> {
    pub fn norm(&self) -> T {
        self.row[0].coefficient_norm().hypot(self.row[1].coefficient_norm())
    }

    pub fn is_zero(&self) -> bool {
        self.row[0].is_zero() && self.row[1].is_zero()
    }

    fn dot(&self, col: &[OpTable<T>; 2], shift: T) -> OpTable<T> {
        self.row[0].mul(&col[0], shift).plus(&self.row[1].mul(&col[1], shift))
    }
}

fn two_level_detuning<T: Real>(c: &CouplingSet<T>, kin: &Kinematics<T>) -> [OpTable<T>; 2] {
    let k = OpTable::kinetic(kin.mass, kin.hbar);
    [k.plus(&OpTable::constant(Complex::from(c.detuning()))), k]
}

/// Terms `Pi_0 .. Pi_max_order` of the projector recursion
///
/// ```text
/// Pi_0     = -Omega^dagger / Delta
/// Pi_{k+1} = Pi_k delta(P) / Delta + sum_{j<k} Pi_{k-j-1} Omega Pi_j / Delta
/// ```
///
/// with the operator valued `Delta(P)^-1` replaced by the scalar `1/Delta`.
pub fn projector_expansion<T: Real>(
    c: &CouplingSet<T>,
    kin: &Kinematics<T>,
    max_order: usize,
) -> Result<Vec<ProjectorTerm<T>>, TwoLevelError> {
    if max_order > 3 {
        return Err(TwoLevelError::OrderTooHigh(max_order));
    }
    if c.delta() == T::zero() {
        return Err(TwoLevelError::SingularDetuning);
    }
    let shift = kin.recoil_momentum();
    let inv = Complex::from(T::one() / c.delta());
    let omega = coupling_column(c);
    let detuning = two_level_detuning(c, kin);
    let mut terms = vec![ProjectorTerm {
        order: 0,
        row: [omega[0].adjoint(shift).scaled(-inv), omega[1].adjoint(shift).scaled(-inv)],
    }];
    for k in 0..max_order {
        let mut row = [0, 1].map(|col| terms[k].row[col].mul(&detuning[col], shift).scaled(inv));
        for j in 0..k {
            let scalar = terms[k - j - 1].dot(&omega, shift);
            for col in 0..2 {
                row[col] = row[col].plus(&scalar.mul(&terms[j].row[col], shift).scaled(inv));
            }
        }
        terms.push(ProjectorTerm { order: k + 1, row });
    }
    Ok(terms)
}

/// Effective two-level operator `delta(P) + Omega Pi` for the given partial
/// sum, as a 2x2 table in the basis `(e, g)`. Apply
/// [`OpTable::rotating_wave`] to each entry for the RWA form.
pub fn effective_operator<T: Real>(
    terms: &[ProjectorTerm<T>],
    c: &CouplingSet<T>,
    kin: &Kinematics<T>,
) -> [[OpTable<T>; 2]; 2] {
    let shift = kin.recoil_momentum();
    let omega = coupling_column(c);
    let detuning = two_level_detuning(c, kin);
    let mut h = [[OpTable::zero(), OpTable::zero()], [OpTable::zero(), OpTable::zero()]];
    h[0][0] = detuning[0].clone();
    h[1][1] = detuning[1].clone();
    for t in terms {
        for r in 0..2 {
            for col in 0..2 {
                h[r][col] = h[r][col].plus(&omega[r].mul(&t.row[col], shift));
            }
        }
    }
    h
}

/// Two-component test state sampled on a momentum lattice along Z whose
/// spacing divides the photon momentum `hbar k_L`.
#[derive(Debug, Clone, PartialEq)]
pub struct TestState<T> {
    pub p_min: T,
    pub sub: usize,
    pub amplitudes: [Vec<Complex<T>>; 2],
    /// Transverse momentum-squared eigenvalue.
    pub p_perp2: T,
}

impl<T: Real> TestState<T> {
    /// Gaussian wavepacket along Z times the internal spinor `(e, g)`,
    /// padded by `margin` photon momenta on each side.
    pub fn coherent(psi: &GaussianWavepacket<T>, spinor: [Complex<T>; 2], kin: &Kinematics<T>, margin: usize) -> Self {
        let shift = kin.recoil_momentum();
        let width = psi.momentum_width(Axis::Z);
        let p0 = psi.p0()[2];
        let ratio = (lit::<T>(4.0) * shift / width).ceil();
        let (p_min, sub, amp) = if ratio > lit(4096.0) {
            // narrower than any affordable lattice: use the momentum eigenstate at p0
            let mut amp = vec![Complex::new(T::zero(), T::zero()); 2 * margin + 1];
            amp[margin] = Complex::new(T::one(), T::zero());
            (p0 - lit::<T>(margin as f64) * shift, 1, amp)
        } else {
            let sub = ratio.to_usize().unwrap_or(1).max(1);
            let dp = shift / lit::<T>(sub as f64);
            let half = (lit::<T>(10.0) * width / dp).ceil().to_usize().unwrap_or(1) + margin * sub;
            let p_min = p0 - lit::<T>(half as f64) * dp;
            let amp = (0..2 * half + 1)
                .map(|j| {
                    let p = p_min + lit::<T>(j as f64) * dp;
                    psi.amplitude_1d(Axis::Z, p, kin.hbar) * dp.sqrt()
                })
                .collect();
            (p_min, sub, amp)
        };
        Self {
            p_min,
            sub,
            amplitudes: spinor.map(|s| amp.iter().map(|a| *a * s).collect()),
            p_perp2: T::zero(),
        }
    }

    fn apply(&self, op: &OpTable<T>, v: &[Complex<T>], shift: T, omega_t: T) -> Vec<Complex<T>> {
        op.apply(v, self.p_min, self.sub, shift, omega_t, self.p_perp2)
    }

    fn momentum(&self, j: usize, shift: T) -> T {
        self.p_min + lit::<T>(j as f64) * shift / lit::<T>(self.sub as f64)
    }
}

fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().fold(T::zero(), |a, c| a + c.norm_sqr()).sqrt()
}

/// Relative residual `|| R chi || / || Omega^dagger chi ||` of the Bloch
/// equation `R = Delta(P) Pi + Omega^dagger - Pi delta(P) - Pi Omega Pi` for
/// the partial sum of `terms`, with the kinetic part of `Delta(P)` kept exact.
/// Both norms are root-mean-square values over eight optical phases
/// `omega t` spread across one period of the `exp(2 i omega t)` terms, since
/// rotating and counter-rotating parts can cancel at isolated instants.
pub fn bloch_residual<T: Real>(
    terms: &[ProjectorTerm<T>],
    c: &CouplingSet<T>,
    kin: &Kinematics<T>,
    state: &TestState<T>,
) -> T {
    let (mut num, mut den) = (T::zero(), T::zero());
    for j in 0..8 {
        let omega_t = T::PI() * lit::<T>(j as f64 / 8.0);
        let (r, s) = residual_at(terms, c, kin, state, omega_t);
        num += r * r;
        den += s * s;
    }
    (num / den).sqrt()
}

fn residual_at<T: Real>(
    terms: &[ProjectorTerm<T>],
    c: &CouplingSet<T>,
    kin: &Kinematics<T>,
    state: &TestState<T>,
    omega_t: T,
) -> (T, T) {
    let shift = kin.recoil_momentum();
    let n = state.amplitudes[0].len();
    let zero = Complex::new(T::zero(), T::zero());
    let omega = coupling_column(c);
    let dagger = [omega[0].adjoint(shift), omega[1].adjoint(shift)];
    let kinetic = |j: usize| {
        let p = state.momentum(j, shift);
        (p * p + state.p_perp2) / (lit::<T>(2.0) * kin.mass * kin.hbar)
    };
    let project = |x: &[Vec<Complex<T>>; 2]| {
        let mut a = vec![zero; n];
        for t in terms {
            for col in 0..2 {
                for (dst, src) in a.iter_mut().zip(state.apply(&t.row[col], &x[col], shift, omega_t)) {
                    *dst += src;
                }
            }
        }
        a
    };
    let chi = &state.amplitudes;
    let mut lhs = project(chi);
    for (j, v) in lhs.iter_mut().enumerate() {
        *v = *v * (c.delta() + kinetic(j));
    }
    let mut source = vec![zero; n];
    for col in 0..2 {
        for (dst, src) in source.iter_mut().zip(state.apply(&dagger[col], &chi[col], shift, omega_t)) {
            *dst += src;
        }
    }
    let detuned: [Vec<Complex<T>>; 2] = [0, 1].map(|col| {
        chi[col]
            .iter()
            .enumerate()
            .map(|(j, v)| *v * (kinetic(j) + if col == 0 { c.detuning() } else { T::zero() }))
            .collect()
    });
    let right = project(&detuned);
    let ancilla = project(chi);
    let back = [state.apply(&omega[0], &ancilla, shift, omega_t), state.apply(&omega[1], &ancilla, shift, omega_t)];
    let nonlinear = project(&back);
    let residual: Vec<Complex<T>> = (0..n).map(|j| lhs[j] + source[j] - right[j] - nonlinear[j]).collect();
    (norm(&residual), norm(&source))
}
