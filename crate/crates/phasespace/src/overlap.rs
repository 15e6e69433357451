use e1m1_core::{lit, GaussianWavepacket, Real};
use num_complex::Complex;

use crate::{compose, CanonicalUnitary};

/// Logarithm of `<psi| U |psi>` for a Gaussian wavepacket.
///
/// The real part is the log visibility, the imaginary part the unwrapped
/// phase. Each axis contributes an independent Gaussian integral; with
/// `m = p0 - b/2`, `alpha = 1/(2 s^2) + i a/hbar` and
/// `beta = (2 a m + c)/hbar` it reads
///
/// ```text
/// i b r0/hbar - b^2/(8 s^2) - i (a m^2 + c m)/hbar
///     - ln(1 + 2 i a s^2/hbar)/2 - beta^2/(4 alpha)
/// ```
pub fn log_expectation<T: Real>(u: &CanonicalUnitary<T>, psi: &GaussianWavepacket<T>) -> Complex<T> {
    let h = u.hbar();
    let (a, b, c) = (u.a(), u.b(), u.c());
    let one = T::one();
    let two = lit::<T>(2.0);
    let i = Complex::<T>::i();
    let mut acc = i * u.theta();
    for ax in 0..3 {
        let s2 = psi.variance()[ax];
        let (p0, r0) = (psi.p0()[ax], psi.r0()[ax]);
        let m = p0 - b[ax] / two;
        let alpha = Complex::new(one / (two * s2), a / h);
        let beta = (two * a * m + c[ax]) / h;
        let det = Complex::new(one, two * a * s2 / h);
        acc += i * (b[ax] * r0 / h - (a * m * m + c[ax] * m) / h);
        acc -= Complex::from(b[ax] * b[ax] / (lit::<T>(8.0) * s2));
        acc -= det.ln() / two;
        acc -= Complex::from(beta * beta) / (alpha * lit::<T>(4.0));
    }
    acc
}

/// One path through an interferometer: an amplitude and the operator that
/// transports the initial wavepacket along it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedBranch<T> {
    pub weight: Complex<T>,
    pub op: CanonicalUnitary<T>,
    pub label: String,
}

impl<T: Real> WeightedBranch<T> {
    pub fn new(weight: Complex<T>, op: CanonicalUnitary<T>, label: impl Into<String>) -> Self {
        Self { weight, op, label: label.into() }
    }

    /// Appends an operator acting after the branch, multiplying the weight.
    pub fn then(&self, weight: Complex<T>, op: &CanonicalUnitary<T>, label: &str) -> Self {
        let label = if self.label.is_empty() { label.to_string() } else { format!("{}|{}", self.label, label) };
        Self { weight: self.weight * weight, op: self.op.then(op), label }
    }
}

/// Overlap `<psi| U_m^dagger U_l |psi>` of two branches together with the
/// weight product `w_m^* w_l` that multiplies it in the port signal.
#[derive(Debug, Clone, PartialEq)]
pub struct PairOverlap<T> {
    pub l: usize,
    pub m: usize,
    pub log_overlap: Complex<T>,
    pub weight: Complex<T>,
}

impl<T: Real> PairOverlap<T> {
    pub fn visibility(&self) -> T {
        self.log_overlap.re.exp()
    }

    /// Unwrapped phase difference of branch `l` relative to branch `m`.
    pub fn phase(&self) -> T {
        self.log_overlap.im
    }

    pub fn overlap(&self) -> Complex<T> {
        self.log_overlap.exp()
    }

    /// Contribution `w_m^* w_l <U_m^dagger U_l>` to the port intensity.
    pub fn contribution(&self) -> Complex<T> {
        self.weight * self.overlap()
    }

    fn swapped(&self) -> Self {
        Self { l: self.m, m: self.l, log_overlap: self.log_overlap.conj(), weight: self.weight.conj() }
    }
}

/// Every ordered pair of branches. Only `l < m` is evaluated; the mirrored
/// entries are complex conjugates, so the phase antisymmetry is exact.
pub fn overlap_pairs<T: Real>(branches: &[WeightedBranch<T>], psi: &GaussianWavepacket<T>) -> Vec<PairOverlap<T>> {
    let n = branches.len();
    let mut out = Vec::with_capacity(n * n);
    for l in 0..n {
        for m in (l + 1)..n {
            let op = compose(&branches[m].op.inverse(), &branches[l].op);
            let pair = PairOverlap {
                l,
                m,
                log_overlap: log_expectation(&op, psi),
                weight: branches[m].weight.conj() * branches[l].weight,
            };
            out.push(pair.swapped());
            out.push(pair);
        }
    }
    for (l, br) in branches.iter().enumerate() {
        out.push(PairOverlap { l, m: l, log_overlap: Complex::new(T::zero(), T::zero()), weight: br.weight.norm_sqr().into() });
    }
    out.sort_by_key(|p| (p.l, p.m));
    out
}

/// Port intensity `sum_l |w_l|^2 + sum_{l != m} w_m^* w_l <U_m^dagger U_l>`.
pub fn exit_signal<T: Real>(pairs: &[PairOverlap<T>]) -> T {
    let mut total = T::zero();
    for p in pairs {
        total += p.contribution().re;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Unitary;

    fn psi() -> GaussianWavepacket<f64> {
        GaussianWavepacket::new([0.1, -0.2, 0.3], [0.8, 1.1, 0.6], [0.5, 0.0, -1.0]).unwrap()
    }

    #[test]
    fn identity_overlap_is_one() {
        let l = log_expectation(&Unitary::identity(1.0), &psi());
        assert!(l.norm() < 1e-15);
    }

    #[test]
    fn pure_phase() {
        let l = log_expectation(&Unitary::global_phase("x", 0.7, 1.0), &psi());
        assert!((l.im - 0.7).abs() < 1e-15 && l.re.abs() < 1e-15);
    }

    #[test]
    fn kick_phase_follows_mean_position() {
        let b = 0.3;
        let l = log_expectation(&Unitary::kick([0.0, 0.0, b], 1.0), &psi());
        let dz = 1.0 / (2.0 * 0.6);
        assert!((l.re + b * b * dz * dz / 2.0).abs() < 1e-14);
        assert!((l.im - b * -1.0).abs() < 1e-14);
    }

    #[test]
    fn shift_phase_follows_mean_momentum() {
        let c = 0.4;
        let l = log_expectation(&Unitary::shift([c, 0.0, 0.0], 1.0), &psi());
        assert!((l.im + c * 0.1).abs() < 1e-14);
        assert!((l.re + c * c * 0.64 / 2.0).abs() < 1e-14);
    }

    #[test]
    fn two_path_signal_extremes() {
        let w = Complex::new(0.5f64.sqrt(), 0.0);
        let same = [
            WeightedBranch::new(w, Unitary::identity(1.0), "l"),
            WeightedBranch::new(w, Unitary::identity(1.0), "u"),
        ];
        assert!((exit_signal(&overlap_pairs(&same, &psi())) - 2.0).abs() < 1e-15);
        let flipped = [
            WeightedBranch::new(w, Unitary::identity(1.0), "l"),
            WeightedBranch::new(w, Unitary::global_phase("pi", std::f64::consts::PI, 1.0), "u"),
        ];
        assert!(exit_signal(&overlap_pairs(&flipped, &psi())).abs() < 1e-15);
    }

    #[test]
    fn antisymmetric_phases() {
        let br = [
            WeightedBranch::new(Complex::new(1.0, 0.0), Unitary::kick([0.0, 0.0, 0.2], 1.0), "l"),
            WeightedBranch::new(Complex::new(1.0, 0.0), Unitary::dispersion(0.3, 1.0), "u"),
        ];
        let pairs = overlap_pairs(&br, &psi());
        let lm = pairs.iter().find(|p| p.l == 0 && p.m == 1).unwrap();
        let ml = pairs.iter().find(|p| p.l == 1 && p.m == 0).unwrap();
        assert_eq!(lm.phase(), -ml.phase());
        assert_eq!(lm.visibility(), ml.visibility());
    }
}
