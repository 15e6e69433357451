use std::ops::Mul;

use e1m1_core::{lit, Real, Vec3};
use num_complex::Complex;

use crate::{PhaseLedger, PhaseSpaceError};

/// Label under which the ordering phases produced by products are booked.
pub(crate) const ORDERING: &str = "ordering";

fn dot<T: Real>(x: &Vec3<T>, y: &Vec3<T>) -> T {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn zip<T: Real>(x: &Vec3<T>, y: &Vec3<T>, f: impl Fn(T, T) -> T) -> Vec3<T> {
    [f(x[0], y[0]), f(x[1], y[1]), f(x[2], y[2])]
}

/// Element of the group generated by `{1, Z, P, P^2}`.
///
/// Stored as `exp(i theta) exp(i b.Z/hbar) exp(-i c.P/hbar) exp(-i a P^2/hbar)`,
/// where `b` is a momentum kick, `c` a position shift and `a` an isotropic
/// dispersion coefficient. On a momentum eigenstate
/// `U |p> = exp(i theta - i (a p^2 + c.p) / hbar) |p + b>`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalUnitary<T> {
    phase: PhaseLedger<T>,
    b: Vec3<T>,
    c: Vec3<T>,
    a: T,
    hbar: T,
}

impl<T: Real> CanonicalUnitary<T> {
    pub fn identity(hbar: T) -> Self {
        Self { phase: PhaseLedger::new(), b: [T::zero(); 3], c: [T::zero(); 3], a: T::zero(), hbar }
    }

    pub fn from_parts(phase: PhaseLedger<T>, b: Vec3<T>, c: Vec3<T>, a: T, hbar: T) -> Self {
        Self { phase, b, c, a, hbar }
    }

    /// `exp(i b.Z / hbar)`.
    pub fn kick(b: Vec3<T>, hbar: T) -> Self {
        Self { b, ..Self::identity(hbar) }
    }

    /// Vertical kick `exp(i k Z)` written through its wavenumber.
    pub fn kick_z(k: T, hbar: T) -> Self {
        Self::kick([T::zero(), T::zero(), hbar * k], hbar)
    }

    /// `exp(-i c.P / hbar)`, a rigid translation by `c`.
    pub fn shift(c: Vec3<T>, hbar: T) -> Self {
        Self { c, ..Self::identity(hbar) }
    }

    /// `exp(-i a P^2 / hbar)`.
    pub fn dispersion(a: T, hbar: T) -> Self {
        Self { a, ..Self::identity(hbar) }
    }

    pub fn global_phase(label: impl Into<String>, theta: T, hbar: T) -> Self {
        Self { phase: PhaseLedger::single(label, theta), ..Self::identity(hbar) }
    }

    /// Exact evolution under `P^2 / (2 m) + m g Z` for a time `t`.
    pub fn free_fall(mass: T, g: T, t: T, hbar: T, label: impl Into<String>) -> Self {
        let zero = T::zero();
        Self {
            phase: PhaseLedger::single(label, -mass * g * g * t * t * t / (lit::<T>(6.0) * hbar)),
            b: [zero, zero, -mass * g * t],
            c: [zero, zero, -g * t * t * lit(0.5)],
            a: t / (lit::<T>(2.0) * mass),
            hbar,
        }
    }

    /// Phase-space displacement `exp(-i (r.P - p.Z) / hbar)` that maps
    /// `Z -> Z + r` and `P -> P + p`.
    pub fn displacement(p: Vec3<T>, r: Vec3<T>, hbar: T, label: impl Into<String>) -> Self {
        Self {
            phase: PhaseLedger::single(label, -dot(&p, &r) / (lit::<T>(2.0) * hbar)),
            b: p,
            c: r,
            a: T::zero(),
            hbar,
        }
    }

    /// Displacement onto the classical free-fall trajectory started at rest,
    /// `Z_cl = -g t^2 / 2` and `P_cl = -m g t`.
    pub fn gravity_displacement(mass: T, g: T, t: T, hbar: T, label: impl Into<String>) -> Self {
        let zero = T::zero();
        let p = [zero, zero, -mass * g * t];
        let r = [zero, zero, -g * t * t * lit(0.5)];
        Self::displacement(p, r, hbar, label)
    }

    pub fn theta(&self) -> T {
        self.phase.total()
    }

    pub fn phase(&self) -> &PhaseLedger<T> {
        &self.phase
    }

    pub fn b(&self) -> Vec3<T> {
        self.b
    }

    pub fn c(&self) -> Vec3<T> {
        self.c
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    /// Product `next * self`, i.e. `self` acts first.
    pub fn then(&self, next: &Self) -> Self {
        compose(next, self)
    }

    /// Checked product that rejects operands built with different hbar.
    pub fn try_compose(u2: &Self, u1: &Self) -> Result<Self, PhaseSpaceError> {
        let tol = lit::<T>(1e-12) * u1.hbar.abs();
        if (u1.hbar - u2.hbar).abs() > tol {
            return Err(PhaseSpaceError::HbarMismatch {
                left: u2.hbar.to_f64().unwrap_or(f64::NAN),
                right: u1.hbar.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(compose(u2, u1))
    }

    pub fn inverse(&self) -> Self {
        let h = self.hbar;
        let mut phase = self.phase.negated();
        phase.add(ORDERING, (self.a * dot(&self.b, &self.b) - dot(&self.c, &self.b)) / h);
        Self {
            phase,
            b: self.b.map(|v| -v),
            c: zip(&self.b, &self.c, |b, c| lit::<T>(2.0) * self.a * b - c),
            a: -self.a,
            hbar: h,
        }
    }

    /// Image of the momentum eigenstate `|p>`: the new momentum and the
    /// phase factor multiplying it.
    pub fn act_on_momentum(&self, p: Vec3<T>) -> (Vec3<T>, Complex<T>) {
        let arg = self.theta() - (self.a * dot(&p, &p) + dot(&self.c, &p)) / self.hbar;
        (zip(&p, &self.b, |x, y| x + y), Complex::from_polar(T::one(), arg))
    }

    /// Same operator with every phase label prefixed.
    pub fn relabelled(&self, prefix: &str) -> Self {
        Self { phase: self.phase.relabelled(prefix), ..self.clone() }
    }

    /// Parameter-wise comparison, including the total phase.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        let close = |x: T, y: T| (x - y).abs() <= tol * (T::one() + x.abs().max(y.abs()));
        (0..3).all(|i| close(self.b[i], other.b[i]) && close(self.c[i], other.c[i]))
            && close(self.a, other.a)
            && close(self.theta(), other.theta())
    }

    /// Placeholder for operators quadratic in position, which the algebra
    /// cannot hold.
    pub fn position_quadratic(_coefficient: T) -> Result<Self, PhaseSpaceError> {
        Err(PhaseSpaceError::NotRepresentable { generator: "Z^2" })
    }
}

/// Exact product `u2 * u1` (`u1` acts first).
pub fn compose<T: Real>(u2: &CanonicalUnitary<T>, u1: &CanonicalUnitary<T>) -> CanonicalUnitary<T> {
    let h = u1.hbar;
    let mut phase = u1.phase.clone();
    phase.merge(&u2.phase);
    phase.add(ORDERING, -(u2.a * dot(&u1.b, &u1.b) + dot(&u2.c, &u1.b)) / h);
    let two = lit::<T>(2.0);
    CanonicalUnitary {
        phase,
        b: zip(&u1.b, &u2.b, |x, y| x + y),
        c: [0, 1, 2].map(|i| u1.c[i] + u2.c[i] + two * u2.a * u1.b[i]),
        a: u1.a + u2.a,
        hbar: h,
    }
}

impl<T: Real> Mul for &CanonicalUnitary<T> {
    type Output = CanonicalUnitary<T>;

    fn mul(self, rhs: Self) -> CanonicalUnitary<T> {
        compose(self, rhs)
    }
}

impl<T: Real> Mul for CanonicalUnitary<T> {
    type Output = CanonicalUnitary<T>;

    fn mul(self, rhs: Self) -> CanonicalUnitary<T> {
        compose(&self, &rhs)
    }
}
