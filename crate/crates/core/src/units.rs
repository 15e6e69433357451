use crate::error::{positive, CoreError};
use crate::{lit, Real};

/// Reduced Planck constant in J s (exact SI value).
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Speed of light in m/s (exact SI value).
pub const C_SI: f64 = 299_792_458.0;

/// Exponents of mass, length and time carried by a quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dimension {
    pub mass: i32,
    pub length: i32,
    pub time: i32,
}

impl Dimension {
    pub const fn new(mass: i32, length: i32, time: i32) -> Self {
        Self { mass, length, time }
    }

    pub const DIMENSIONLESS: Self = Self::new(0, 0, 0);
    pub const MASS: Self = Self::new(1, 0, 0);
    pub const LENGTH: Self = Self::new(0, 1, 0);
    pub const TIME: Self = Self::new(0, 0, 1);
    pub const FREQUENCY: Self = Self::new(0, 0, -1);
    pub const WAVENUMBER: Self = Self::new(0, -1, 0);
    pub const VELOCITY: Self = Self::new(0, 1, -1);
    pub const ACCELERATION: Self = Self::new(0, 1, -2);
    pub const MOMENTUM: Self = Self::new(1, 1, -1);
    pub const ACTION: Self = Self::new(1, 2, -1);
    pub const ENERGY: Self = Self::new(1, 2, -2);
}

/// Conversion between SI values and the internal unit system.
///
/// The internal mass unit is `mass` (kg), the time unit is `time` (s) and the
/// length unit is `length` (m). With the natural length
/// `sqrt(hbar / (mass / time))` the internal reduced Planck constant is
/// exactly one; any other length scale is allowed and the internal value of
/// hbar follows from [`UnitSystem::hbar`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem<T> {
    mass: T,
    time: T,
    length: T,
}

impl<T: Real> UnitSystem<T> {
    /// All scales equal to one: internal values coincide with SI values.
    pub fn identity() -> Self {
        Self { mass: T::one(), time: T::one(), length: T::one() }
    }

    /// Mass scale `mass` and time scale `1 / omega`, with the length chosen
    /// so that hbar is one internally.
    pub fn natural(mass: T, omega: T) -> Result<Self, CoreError> {
        Self::builder().mass(mass).angular_frequency(omega).build()
    }

    pub fn builder() -> UnitSystemBuilder<T> {
        UnitSystemBuilder::default()
    }

    pub fn mass_scale(&self) -> T {
        self.mass
    }

    pub fn time_scale(&self) -> T {
        self.time
    }

    pub fn length_scale(&self) -> T {
        self.length
    }

    /// SI value of one internal unit of the given dimension.
    pub fn scale(&self, dim: Dimension) -> T {
        self.mass.powi(dim.mass) * self.length.powi(dim.length) * self.time.powi(dim.time)
    }

    pub fn to_internal(&self, si: T, dim: Dimension) -> T {
        si / self.scale(dim)
    }

    pub fn to_si(&self, internal: T, dim: Dimension) -> T {
        internal * self.scale(dim)
    }

    /// Converts a batch of `(value, dimension)` pairs to internal units.
    pub fn nondimensionalize(&self, values: &[(T, Dimension)]) -> Vec<T> {
        values.iter().map(|&(v, d)| self.to_internal(v, d)).collect()
    }

    /// Reduced Planck constant expressed in internal units.
    pub fn hbar(&self) -> T {
        self.to_internal(lit(HBAR_SI), Dimension::ACTION)
    }

    /// Speed of light expressed in internal units.
    pub fn c(&self) -> T {
        self.to_internal(lit(C_SI), Dimension::VELOCITY)
    }
}

/// Builder that reports which reference scale is missing.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitSystemBuilder<T> {
    mass: Option<T>,
    omega: Option<T>,
    length: Option<T>,
}

impl<T: Real> UnitSystemBuilder<T> {
    pub fn mass(mut self, kg: T) -> Self {
        self.mass = Some(kg);
        self
    }

    /// Reference angular frequency in rad/s; the time unit is its inverse.
    pub fn angular_frequency(mut self, rad_per_s: T) -> Self {
        self.omega = Some(rad_per_s);
        self
    }

    /// Optional reference length in m. Without it the natural length is used.
    pub fn length(mut self, m: T) -> Self {
        self.length = Some(m);
        self
    }

    pub fn build(self) -> Result<UnitSystem<T>, CoreError> {
        let mass = positive("reference mass", self.mass.ok_or(CoreError::MissingScale("mass"))?)?;
        let omega = positive(
            "reference angular frequency",
            self.omega.ok_or(CoreError::MissingScale("time"))?,
        )?;
        let time = omega.recip();
        let length = match self.length {
            Some(l) => positive("reference length", l)?,
            None => (lit::<T>(HBAR_SI) * time / mass).sqrt(),
        };
        Ok(UnitSystem { mass, time, length })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_units_have_unit_hbar() {
        let u = UnitSystem::<f64>::natural(1.46e-25, 500.0).unwrap();
        assert!((u.hbar() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pulse_time_becomes_pi() {
        let u = UnitSystem::<f64>::natural(1.46e-25, 500.0).unwrap();
        let t = std::f64::consts::PI / 500.0;
        let tau = u.to_internal(t, Dimension::TIME);
        assert!((tau - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn rayleigh_length_as_reference_length() {
        let u = UnitSystem::<f64>::builder()
            .mass(1.46e-25)
            .angular_frequency(500.0)
            .length(5.0)
            .build()
            .unwrap();
        assert_eq!(u.to_internal(5.0, Dimension::LENGTH), 1.0);
        let expected = HBAR_SI / (1.46e-25 * 25.0 * 500.0);
        assert!((u.hbar() - expected).abs() / expected < 1e-14);
    }

    #[test]
    fn identity_leaves_values() {
        let u = UnitSystem::<f64>::identity();
        assert_eq!(u.to_internal(3.25, Dimension::MOMENTUM), 3.25);
        assert_eq!(u.nondimensionalize(&[(2.0, Dimension::ENERGY)]), vec![2.0]);
    }

    #[test]
    fn missing_scales_are_reported() {
        let err = UnitSystem::<f64>::builder().angular_frequency(1.0).build().unwrap_err();
        assert_eq!(err, CoreError::MissingScale("mass"));
        let err = UnitSystem::<f64>::builder().mass(1.0).build().unwrap_err();
        assert_eq!(err, CoreError::MissingScale("time"));
    }

    #[test]
    fn single_precision_builds() {
        let u = UnitSystem::<f32>::natural(1.0e-25, 100.0).unwrap();
        assert!((u.hbar() - 1.0).abs() < 1e-5);
    }
}
