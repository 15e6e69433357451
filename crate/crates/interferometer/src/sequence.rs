use e1m1_core::InternalState;

use crate::InterferometerError;

fn check_finite(name: &str, v: f64) -> Result<(), InterferometerError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(InterferometerError::Timing(format!("{name} must be finite, got {v}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<(), InterferometerError> {
    check_finite(name, v)?;
    if v > 0.0 {
        Ok(())
    } else {
        Err(InterferometerError::Timing(format!("{name} must be positive, got {v}")))
    }
}

fn ordered(pairs: &[(&str, f64, &str, f64)]) -> Result<(), InterferometerError> {
    for &(a, x, b, y) in pairs {
        if x >= y {
            return Err(InterferometerError::Timing(format!("{a} = {x} must precede {b} = {y}")));
        }
    }
    Ok(())
}

fn close(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= 1e-12 * scale.abs().max(1.0)
}

/// Timing of the superposition scheme: Bragg pulses at `T0`, `T1`, `T3`,
/// `T4`, and the clock-initialising pi/2 pulse occupying
/// `[T2, T2 + t_pi_half]` on both branches.
///
/// The upper branch is kicked at `T0` and stopped at `T1`; the lower one is
/// kicked at `T3` and stopped at `T4`. Both kicks last `delta_t`, which
/// closes the geometry when the masses are equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeASequence {
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub delta_t: f64,
    pub t_pi_half: f64,
    pub k_p: f64,
    /// Offset of the clock initialisation in the second run.
    pub tau: f64,
}

impl SchemeASequence {
    /// Builds the sequence from the start time, the separation time and the
    /// two remaining free times; `t1 = t0 + delta_t` and `t4 = t3 + delta_t`.
    pub fn new(t0: f64, delta_t: f64, t2: f64, t3: f64, t_pi_half: f64, k_p: f64, tau: f64) -> Result<Self, InterferometerError> {
        Self::from_times([t0, t0 + delta_t, t2, t3, t3 + delta_t], delta_t, t_pi_half, k_p, tau)
    }

    pub fn from_times(times: [f64; 5], delta_t: f64, t_pi_half: f64, k_p: f64, tau: f64) -> Result<Self, InterferometerError> {
        let [t0, t1, t2, t3, t4] = times;
        let seq = Self { t0, t1, t2, t3, t4, delta_t, t_pi_half, k_p, tau };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<(), InterferometerError> {
        for (name, v) in [("T0", self.t0), ("T1", self.t1), ("T2", self.t2), ("T3", self.t3), ("T4", self.t4), ("k_p", self.k_p)] {
            check_finite(name, v)?;
        }
        check_positive("delta T", self.delta_t)?;
        check_finite("t_pi/2", self.t_pi_half)?;
        if self.t_pi_half < 0.0 {
            return Err(InterferometerError::Timing(format!("t_pi/2 must not be negative, got {}", self.t_pi_half)));
        }
        check_finite("tau", self.tau)?;
        if self.tau < 0.0 {
            return Err(InterferometerError::Timing(format!("tau must not be negative, got {}", self.tau)));
        }
        let end = self.t2 + self.tau + self.t_pi_half;
        ordered(&[
            ("T0", self.t0, "T1", self.t1),
            ("T1", self.t1, "T2", self.t2),
            ("T2 + tau + t_pi/2", end, "T3", self.t3),
            ("T3", self.t3, "T4", self.t4),
        ])?;
        if self.t_pi_half == 0.0 && self.t2 >= self.t3 {
            return Err(InterferometerError::Timing("T2 must precede T3".into()));
        }
        let scale = self.t4.abs();
        if !close(self.t1 - self.t0, self.delta_t, scale) || !close(self.t4 - self.t3, self.delta_t, scale) {
            return Err(InterferometerError::Timing(format!(
                "geometry does not close: T1 - T0 = {}, T4 - T3 = {}, delta T = {}",
                self.t1 - self.t0,
                self.t4 - self.t3,
                self.delta_t
            )));
        }
        Ok(())
    }

    /// The same sequence with the clock initialised `tau` later.
    pub fn shifted(&self) -> Self {
        Self { t2: self.t2 + self.tau, tau: 0.0, ..*self }
    }

    pub fn with_t_pi_half(&self, t_pi_half: f64) -> Result<Self, InterferometerError> {
        let seq = Self { t_pi_half, ..*self };
        seq.validate()?;
        Ok(seq)
    }
}

/// Timing of the scheme without superpositions: a double Bragg pulse at
/// `T0` opens the branches with momenta `+-hbar k_p`, the pulse at `T1`
/// stops them, the one at `T4` relaunches them towards each other and the
/// one at `T4 + delta_t` closes the geometry. Recoilless pi pulses start at
/// `T2` and `T3` on both branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeBSequence {
    pub t0: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub delta_t: f64,
    pub t_pi: f64,
    pub k_p: f64,
    pub initial_state: InternalState,
}

impl SchemeBSequence {
    /// Symmetric placement: each pi pulse starts together with a Bragg
    /// pulse, `T2 = T1` and `T3 = T4`, so that `T3 - T2 = T4 - T1 = T`.
    pub fn symmetric(
        t0: f64,
        delta_t: f64,
        big_t: f64,
        t_pi: f64,
        k_p: f64,
        initial_state: InternalState,
    ) -> Result<Self, InterferometerError> {
        let t1 = t0 + delta_t;
        Self::from_times([t0, t1, t1, t1 + big_t, t1 + big_t], delta_t, t_pi, k_p, initial_state)
    }

    pub fn from_times(
        times: [f64; 5],
        delta_t: f64,
        t_pi: f64,
        k_p: f64,
        initial_state: InternalState,
    ) -> Result<Self, InterferometerError> {
        let [t0, t1, t2, t3, t4] = times;
        let seq = Self { t0, t1, t2, t3, t4, delta_t, t_pi, k_p, initial_state };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<(), InterferometerError> {
        for (name, v) in [("T0", self.t0), ("T1", self.t1), ("T2", self.t2), ("T3", self.t3), ("T4", self.t4), ("k_p", self.k_p)] {
            check_finite(name, v)?;
        }
        check_positive("delta T", self.delta_t)?;
        check_finite("t_pi", self.t_pi)?;
        if self.t_pi < 0.0 {
            return Err(InterferometerError::Timing(format!("t_pi must not be negative, got {}", self.t_pi)));
        }
        let scale = self.t4.abs() + self.delta_t;
        if !close(self.t1 - self.t0, self.delta_t, scale) {
            return Err(InterferometerError::Timing(format!("T1 - T0 = {} differs from delta T = {}", self.t1 - self.t0, self.delta_t)));
        }
        if !close(self.t3 - self.t2, self.t4 - self.t1, scale) {
            return Err(InterferometerError::Timing(format!(
                "asymmetric timing: T3 - T2 = {} but T4 - T1 = {}",
                self.t3 - self.t2,
                self.t4 - self.t1
            )));
        }
        ordered(&[("T0", self.t0, "T1", self.t1), ("T2 + t_pi", self.t2 + self.t_pi, "T3", self.t3)])?;
        if self.t2 < self.t1 {
            return Err(InterferometerError::Timing(format!("T2 = {} must not precede T1 = {}", self.t2, self.t1)));
        }
        if self.t2 + self.t_pi > self.t4 {
            return Err(InterferometerError::Timing(format!(
                "first pi pulse ends at {} after the relaunch at {}",
                self.t2 + self.t_pi,
                self.t4
            )));
        }
        if self.t3 + self.t_pi > self.t_end() {
            return Err(InterferometerError::Timing(format!(
                "second pi pulse ends at {} after the closing pulse at {}",
                self.t3 + self.t_pi,
                self.t_end()
            )));
        }
        Ok(())
    }

    /// Middle segment length `T = T4 - T1`.
    pub fn big_t(&self) -> f64 {
        self.t4 - self.t1
    }

    /// Time of the closing Bragg pulse.
    pub fn t_end(&self) -> f64 {
        self.t4 + self.delta_t
    }

    pub fn with_initial_state(&self, initial_state: InternalState) -> Self {
        Self { initial_state, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_a_rejects_overlapping_pulses() {
        assert!(SchemeASequence::new(0.0, 1.0, 2.0, 5.0, 0.5, 1.0, 0.0).is_ok());
        assert!(matches!(SchemeASequence::new(0.0, 1.0, 2.0, 2.4, 0.5, 1.0, 0.0), Err(InterferometerError::Timing(_))));
        // the shifted run must fit as well
        assert!(SchemeASequence::new(0.0, 1.0, 2.0, 5.0, 0.5, 1.0, 2.6).is_err());
        assert!(SchemeASequence::from_times([0.0, 1.0, 2.0, 5.0, 6.5], 1.0, 0.5, 1.0, 0.0).is_err());
    }

    #[test]
    fn scheme_b_enforces_symmetric_timing() {
        let s = SchemeBSequence::symmetric(0.0, 1.0, 10.0, 0.1, 2.0, InternalState::Ground).unwrap();
        assert_eq!(s.big_t(), 10.0);
        assert_eq!(s.t3 - s.t2, s.t4 - s.t1);
        let bad = SchemeBSequence::from_times([0.0, 1.0, 1.0, 10.0, 11.0], 1.0, 0.1, 2.0, InternalState::Ground);
        assert!(matches!(bad, Err(InterferometerError::Timing(m)) if m.contains("asymmetric")));
        // the second pulse may not run past the closing Bragg pulse
        assert!(SchemeBSequence::symmetric(0.0, 1.0, 10.0, 1.5, 2.0, InternalState::Ground).is_err());
    }
}
