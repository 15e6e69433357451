//! Closed-form phases and visibilities to first order in the mass defect
//! ratio `eps`. Times are measured from the release at `T0`, where the
//! packet is taken to be at rest.

use e1m1_core::Axis;

use crate::{SchemeASequence, SchemeBSequence, Setup};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeAPrediction {
    pub delta_phi_g: f64,
    pub delta_phi_e: f64,
    pub delta_phi_minus: f64,
    pub double_differential: f64,
    pub v_g: f64,
    pub v_e: f64,
}

pub fn scheme_a_prediction(seq: &SchemeASequence, setup: &Setup) -> SchemeAPrediction {
    let g = setup.gravity;
    let eps = setup.species.epsilon();
    let m = setup.species.mass();
    let h = setup.hbar();
    let k = setup.coeffs.k();
    let (kp, dt, t) = (seq.k_p, seq.delta_t, seq.t_pi_half);
    let (t2, t3, t4) = (seq.t2 - seq.t0, seq.t3 - seq.t0, seq.t4 - seq.t0);
    let base = 0.5 * g * kp * dt * (t4 + t3 - dt);
    let delta_phi_g = base + 0.5 * eps * g * kp * t * dt;
    let delta_phi_e = base - h * k * kp * dt / m + eps * (h * (k + kp) * kp * dt / (2.0 * m) - 0.5 * g * kp * dt * (t + 2.0 * t2));
    let dp = setup.psi.momentum_width(Axis::Z);
    SchemeAPrediction {
        delta_phi_g,
        delta_phi_e,
        delta_phi_minus: h * k * kp * dt / m - eps * (h * (k + kp) * kp * dt / (2.0 * m) - g * kp * dt * (t + t2)),
        double_differential: -eps * g * kp * dt * seq.tau,
        v_g: 1.0,
        v_e: (-(kp * eps * dp * dt / m).powi(2) / 2.0).exp(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeBPrediction {
    pub delta_phi_g: f64,
    pub delta_phi_e: f64,
    pub delta_phi_plus: f64,
    pub delta_phi_minus: f64,
}

pub fn scheme_b_prediction(seq: &SchemeBSequence, setup: &Setup) -> SchemeBPrediction {
    let g = setup.gravity;
    let eps = setup.species.epsilon();
    let (kp, dt, big_t) = (seq.k_p, seq.delta_t, seq.big_t());
    SchemeBPrediction {
        delta_phi_g: 2.0 * g * kp * dt * (dt + big_t + eps * big_t),
        delta_phi_e: 2.0 * g * kp * dt * (dt + big_t - eps * big_t),
        delta_phi_plus: 4.0 * g * kp * (dt + big_t) * dt,
        delta_phi_minus: 4.0 * eps * g * kp * big_t * dt,
    }
}

/// Three evaluations at `0`, `eps/2` and `eps` and the first-order
/// coefficient they imply, `(4 f(eps/2) - f(eps) - 3 f(0)) / eps`, which
/// is exact for quadratics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonEstimate {
    pub epsilon: f64,
    pub at_zero: f64,
    pub at_half: f64,
    pub at_full: f64,
    pub slope: f64,
}

impl RichardsonEstimate {
    /// Quadratic coefficient of the same fit.
    pub fn curvature(&self) -> f64 {
        2.0 * (self.at_full - 2.0 * self.at_half + self.at_zero) / (self.epsilon * self.epsilon)
    }
}

pub fn richardson<E>(mut f: impl FnMut(f64) -> Result<f64, E>, epsilon: f64) -> Result<RichardsonEstimate, E> {
    let at_zero = f(0.0)?;
    let at_half = f(epsilon / 2.0)?;
    let at_full = f(epsilon)?;
    let slope = (4.0 * at_half - at_full - 3.0 * at_zero) / epsilon;
    Ok(RichardsonEstimate { epsilon, at_zero, at_half, at_full, slope })
}

/// `|residual(eps)| / |residual(eps/2)|`; close to 4 when the residual is
/// second order.
pub fn residual_ratio(residual_full: f64, residual_half: f64) -> f64 {
    residual_full.abs() / residual_half.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_recovers_the_slope_of_a_quadratic() {
        let r = richardson(|x| Ok::<_, ()>(2.0 + 3.0 * x - 5.0 * x * x), 0.1).unwrap();
        assert!((r.slope - 3.0).abs() < 1e-12);
        assert!((r.curvature() + 5.0).abs() < 1e-9);
        assert!((residual_ratio(0.4, -0.1) - 4.0).abs() < 1e-15);
    }
}
