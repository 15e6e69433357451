//! Polynomial Weyl symbols in the six canonical variables and their Moyal
//! product.
//!
//! A symbol is a finite sum of monomials `X^a Px^b Y^c Py^d Z^e Pz^f` with
//! complex coefficients. For polynomials the Moyal series terminates, so
//! operator products, commutators and anticommutators are exact. Gaussian
//! wavepackets have a Gaussian Wigner function, which turns expectation
//! values of symbols into moments of independent normal variables.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use e1m1_core::{Axis, GaussianWavepacket};
use num_complex::Complex64;

/// Index of a canonical variable in the order `X, Px, Y, Py, Z, Pz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Px,
    Y,
    Py,
    Z,
    Pz,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::X, Var::Px, Var::Y, Var::Py, Var::Z, Var::Pz];

    fn index(self) -> usize {
        self as usize
    }
}

type Exponents = [u8; 6];

/// Weyl symbol of an operator polynomial in `(X, P)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Symbol {
    terms: BTreeMap<Exponents, Complex64>,
}

impl Symbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::default().with_term([0; 6], Complex64::new(c, 0.0))
    }

    /// The variable itself, `v`.
    pub fn var(v: Var) -> Self {
        let mut e = [0; 6];
        e[v.index()] = 1;
        Self::default().with_term(e, Complex64::new(1.0, 0.0))
    }

    fn with_term(mut self, e: Exponents, c: Complex64) -> Self {
        self.push(e, c);
        self
    }

    fn push(&mut self, e: Exponents, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.push(*e, c * s);
        }
        out
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Symbol of the adjoint operator.
    pub fn adjoint(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.conj())).collect() }
    }

    /// Largest imaginary part of any coefficient; zero for Hermitian
    /// operators.
    pub fn max_imag(&self) -> f64 {
        self.terms.values().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Partial derivative applied `n` times.
    pub fn derivative(&self, v: Var, n: u8) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] < n {
                continue;
            }
            let mut f = 1.0;
            for j in 0..n {
                f *= (e[i] - j) as f64;
            }
            let mut d = *e;
            d[i] -= n;
            out.push(d, c * f);
        }
        out
    }

    /// Pointwise (classical) product of symbols.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = [0, 1, 2, 3, 4, 5].map(|i| ea[i] + eb[i]);
                out.push(e, ca * cb);
            }
        }
        out
    }

    /// Moyal product, the symbol of the operator product `self * other`.
    pub fn star(&self, other: &Self, hbar: f64) -> Self {
        let mut pairs = vec![(Complex64::new(1.0, 0.0), self.clone(), other.clone())];
        for (q, p) in [(Var::X, Var::Px), (Var::Y, Var::Py), (Var::Z, Var::Pz)] {
            let mut next = Vec::new();
            for (c, f, g) in &pairs {
                let top = f.degree().min(g.degree());
                let mut factor = Complex64::new(1.0, 0.0);
                for n in 0..=top as u8 {
                    if n > 0 {
                        factor *= Complex64::new(0.0, hbar / 2.0) / n as f64;
                    }
                    let mut binom = 1.0;
                    for k in 0..=n {
                        if k > 0 {
                            binom = binom * (n - k + 1) as f64 / k as f64;
                        }
                        let df = f.derivative(q, n - k).derivative(p, k);
                        if df.is_zero() {
                            continue;
                        }
                        let dg = g.derivative(p, n - k).derivative(q, k);
                        if dg.is_zero() {
                            continue;
                        }
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        next.push((c * factor * binom * sign, df, dg));
                    }
                }
            }
            pairs = next;
        }
        let mut out = Self::zero();
        for (c, f, g) in pairs {
            out = out + f.product(&g).scale(c);
        }
        out
    }

    /// Symbol of `[self, other]`.
    pub fn commutator(&self, other: &Self, hbar: f64) -> Self {
        self.star(other, hbar) - other.star(self, hbar)
    }

    /// Symbol of `self other + other self`.
    pub fn anticommutator(&self, other: &Self, hbar: f64) -> Self {
        self.star(other, hbar) + other.star(self, hbar)
    }

    /// Value of the symbol at a phase-space point `(x, px, y, py, z, pz)`.
    pub fn eval(&self, point: [f64; 6]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| c * (0..6).map(|i| point[i].powi(e[i] as i32)).product::<f64>())
            .sum()
    }

    /// `<psi| A |psi>` for the operator `A` with this Weyl symbol.
    pub fn expectation(&self, psi: &GaussianWavepacket<f64>, hbar: f64) -> Complex64 {
        let top = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0) as usize;
        let mut moments = Vec::with_capacity(6);
        for axis in Axis::ALL {
            let i = axis.index();
            let x = normal_moments(psi.r0()[i], psi.position_width(axis, hbar).powi(2), top);
            let p = normal_moments(psi.p0()[i], psi.variance()[i], top);
            moments.push(x);
            moments.push(p);
        }
        self.terms
            .iter()
            .map(|(e, c)| c * (0..6).map(|i| moments[i][e[i] as usize]).product::<f64>())
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u8; 6], &Complex64)> {
        self.terms.iter()
    }
}

/// Raw moments `E[x^n]`, `n = 0..=top`, of a normal variable.
fn normal_moments(mean: f64, var: f64, top: usize) -> Vec<f64> {
    let mut m = vec![1.0; top + 1];
    if top >= 1 {
        m[1] = mean;
    }
    for n in 2..=top {
        m[n] = mean * m[n - 1] + (n - 1) as f64 * var * m[n - 2];
    }
    m
}

impl Add for Symbol {
    type Output = Symbol;

    fn add(mut self, rhs: Symbol) -> Symbol {
        for (e, c) in rhs.terms {
            self.push(e, c);
        }
        self
    }
}

impl Sub for Symbol {
    type Output = Symbol;

    fn sub(self, rhs: Symbol) -> Symbol {
        self + (-rhs)
    }
}

impl Neg for Symbol {
    type Output = Symbol;

    fn neg(self) -> Symbol {
        self.scale_re(-1.0)
    }
}

impl Mul<f64> for Symbol {
    type Output = Symbol;

    fn mul(self, rhs: f64) -> Symbol {
        self.scale_re(rhs)
    }
}
