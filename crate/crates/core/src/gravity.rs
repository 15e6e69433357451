use crate::error::{finite, CoreError};
use crate::{lit, Real};

/// Uniform gravitational field pointing along `-Z`.
///
/// `chirp_compensated` records whether the laser phase is chirped so that
/// the quadratic phase `k_L g t^2 / 2` seen by a falling atom is removed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityFrame<T> {
    g: T,
    chirp_compensated: bool,
}

impl<T: Real> GravityFrame<T> {
    pub fn new(g: T, chirp_compensated: bool) -> Result<Self, CoreError> {
        let g = finite("gravitational acceleration", g)?;
        if g < T::zero() {
            return Err(CoreError::Negative { what: "gravitational acceleration", value: g.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self { g, chirp_compensated })
    }

    pub fn free() -> Self {
        Self { g: T::zero(), chirp_compensated: true }
    }

    pub fn g(&self) -> T {
        self.g
    }

    pub fn chirp_compensated(&self) -> bool {
        self.chirp_compensated
    }

    /// Classical height `-g t^2 / 2` of a particle released at rest.
    pub fn z_cl(&self, t: T) -> T {
        -self.g * t * t * lit(0.5)
    }

    /// Classical momentum `-M g t` of a particle released at rest.
    pub fn p_cl(&self, mass: T, t: T) -> T {
        -mass * self.g * t
    }
}
