use std::collections::BTreeMap;

use e1m1_core::{lit, Real};
use num_complex::Complex;

/// Normal-ordered monomial `exp(i n k Z) exp(2 i m omega t) P_z^jz (P_perp^2)^js`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub n: i32,
    pub m: i32,
    pub jz: u32,
    pub js: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { n: 0, m: 0, jz: 0, js: 0 };

    pub fn wave(n: i32, m: i32) -> Self {
        Self { n, m, jz: 0, js: 0 }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// Operator written as a finite sum of [`Monomial`]s with complex
/// coefficients. This is the closed set generated by the E1-M1 couplings,
/// the kinetic energy and products thereof. `shift` arguments are the
/// momentum quantum `hbar k` carried by `exp(i k Z)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OpTable<T> {
    terms: BTreeMap<Monomial, Complex<T>>,
}

impl<T: Real> OpTable<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn term(c: Complex<T>, mono: Monomial) -> Self {
        let mut t = Self::zero();
        t.push(mono, c);
        t
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::term(c, Monomial::ONE)
    }

    /// `(P_z^2 + P_perp^2) / (2 M hbar)`.
    pub fn kinetic(mass: T, hbar: T) -> Self {
        let f = Complex::from(T::one() / (lit::<T>(2.0) * mass * hbar));
        let mut t = Self::term(f, Monomial { n: 0, m: 0, jz: 2, js: 0 });
        t.push(Monomial { n: 0, m: 0, jz: 0, js: 1 }, f);
        t
    }

    pub fn push(&mut self, mono: Monomial, c: Complex<T>) {
        if c == Complex::new(T::zero(), T::zero()) {
            return;
        }
        *self.terms.entry(mono).or_insert_with(|| Complex::new(T::zero(), T::zero())) += c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Complex<T>)> {
        self.terms.iter()
    }

    pub fn get(&self, mono: &Monomial) -> Complex<T> {
        self.terms.get(mono).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm() == T::zero())
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.push(*k, v);
        }
        out
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        Self { terms: self.terms.iter().map(|(k, &v)| (*k, v * s)).collect() }
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &Self, shift: T) -> Self {
        let mut out = Self::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let s = lit::<T>(f64::from(b.n)) * shift;
                for i in 0..=a.jz {
                    let w = lit::<T>(binomial(a.jz, i)) * s.powi((a.jz - i) as i32);
                    let mono = Monomial { n: a.n + b.n, m: a.m + b.m, jz: i + b.jz, js: a.js + b.js };
                    out.push(mono, ca * cb * w);
                }
            }
        }
        out
    }

    pub fn adjoint(&self, shift: T) -> Self {
        let mut out = Self::zero();
        for (a, &ca) in &self.terms {
            let s = -lit::<T>(f64::from(a.n)) * shift;
            for i in 0..=a.jz {
                let w = lit::<T>(binomial(a.jz, i)) * s.powi((a.jz - i) as i32);
                out.push(Monomial { n: -a.n, m: -a.m, jz: i, js: a.js }, ca.conj() * w);
            }
        }
        out
    }

    /// Time average over the optical period: keeps the `m = 0` monomials.
    pub fn rotating_wave(&self) -> Self {
        Self { terms: self.terms.iter().filter(|(k, _)| k.m == 0).map(|(k, &v)| (*k, v)).collect() }
    }

    /// Euclidean norm of the coefficient table.
    pub fn coefficient_norm(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
    }

    /// Action on a momentum-space amplitude sampled on `p_j = p_min + j dp`
    /// with `dp = shift / sub`, at optical phase `omega t` and transverse
    /// momentum-squared eigenvalue `p_perp2`. Amplitude shifted outside the
    /// lattice is discarded.
    pub fn apply(&self, psi: &[Complex<T>], p_min: T, sub: usize, shift: T, omega_t: T, p_perp2: T) -> Vec<Complex<T>> {
        let n_pts = psi.len();
        let dp = shift / lit::<T>(sub as f64);
        let mut out = vec![Complex::new(T::zero(), T::zero()); n_pts];
        for (mono, &c) in &self.terms {
            let phase = Complex::from_polar(T::one(), lit::<T>(2.0 * f64::from(mono.m)) * omega_t);
            let perp = p_perp2.powi(mono.js as i32);
            let offset = mono.n as isize * sub as isize;
            for (j, &amp) in psi.iter().enumerate() {
                let target = j as isize + offset;
                if target < 0 || target >= n_pts as isize {
                    continue;
                }
                let p = p_min + lit::<T>(j as f64) * dp;
                out[target as usize] += c * phase * amp * (p.powi(mono.jz as i32) * perp);
            }
        }
        out
    }
}
