//! Physical constants, box geometry, quantum numbers and the pair momentum bookkeeping.

use crate::num::{to_f64, Real};
use crate::{Error, Result};

/// Unit system: `hbar`, particle mass and Boltzmann constant.
///
/// Formulas written with Planck's `h` evaluate it as `2π·hbar`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalUnits<T> {
    hbar: T,
    mass: T,
    kb: T,
}

impl<T: Real> PhysicalUnits<T> {
    pub fn new(hbar: T, mass: T, kb: T) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("kb", kb)] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(Error::invalid(
                    name,
                    format!("must be positive and finite, got {}", to_f64(v)),
                ));
            }
        }
        Ok(Self { hbar, mass, kb })
    }

    /// `hbar = m = kB = 1`.
    pub fn reduced() -> Self {
        Self {
            hbar: T::one(),
            mass: T::one(),
            kb: T::one(),
        }
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn kb(&self) -> T {
        self.kb
    }

    pub fn planck(&self) -> T {
        T::planck(self.hbar)
    }

    /// `hbar² / m`, the kinetic coefficient of the relative-motion equation.
    pub fn relative_kinetic_coefficient(&self) -> T {
        self.hbar * self.hbar / self.mass
    }
}

impl<T: Real> Default for PhysicalUnits<T> {
    fn default() -> Self {
        Self::reduced()
    }
}

/// Box of length `L` with half-length `d = L/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxGeometry<T> {
    length: T,
    half: T,
}

impl<T: Real> BoxGeometry<T> {
    pub fn new(length: T) -> Result<Self> {
        if !(length.is_finite() && length > T::zero()) {
            return Err(Error::invalid(
                "L",
                format!("box length must be positive, got {}", to_f64(length)),
            ));
        }
        Ok(Self {
            length,
            half: length * T::half(),
        })
    }

    pub fn from_half_length(d: T) -> Result<Self> {
        if !(d.is_finite() && d > T::zero()) {
            return Err(Error::invalid(
                "d",
                format!("half-length must be positive, got {}", to_f64(d)),
            ));
        }
        Ok(Self { length: d + d, half: d })
    }

    /// Box length `L`.
    pub fn length(&self) -> T {
        self.length
    }

    /// Half-length `d`, the size of the region each particle holds exclusively.
    pub fn half_length(&self) -> T {
        self.half
    }
}

/// Relative (`n`) and centre-of-mass (`N`) quantum numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PairQuantumNumbers {
    pub n: u32,
    pub cm: u32,
}

impl PairQuantumNumbers {
    pub const GROUND: Self = Self { n: 0, cm: 0 };

    pub fn new(n: u32, cm: u32) -> Self {
        Self { n, cm }
    }

    /// Checked constructor for signed input.
    pub fn try_from_signed(n: i64, cm: i64) -> Result<Self> {
        let n =
            u32::try_from(n).map_err(|_| Error::invalid("n", format!("must be a non-negative integer, got {n}")))?;
        let cm =
            u32::try_from(cm).map_err(|_| Error::invalid("N", format!("must be a non-negative integer, got {cm}")))?;
        Ok(Self { n, cm })
    }
}

/// Full momentum bookkeeping of a pair.
///
/// `k1 = -q + K/2`, `k2 = q + K/2`, `k = k2 - k1 = 2q`, `K = k1 + k2` and `λ = 2π/q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers<T> {
    pub q: T,
    pub cm: T,
    pub k: T,
    pub k1: T,
    pub k2: T,
    /// Wavelength `2π/q`; infinite when `q = 0`.
    pub lambda: T,
}

impl<T: Real> WaveNumbers<T> {
    /// The pair after a collision: `k1` and `k2` trade places, `|k|` and `K` are unchanged.
    pub fn after_collision(&self) -> Self {
        Self {
            k: -self.k,
            k1: self.k2,
            k2: self.k1,
            ..*self
        }
    }
}

/// Splits relative motion `q` and centre-of-mass momentum `K` into single-particle momenta.
pub fn decompose_momenta<T: Real>(q: T, cm: T) -> WaveNumbers<T> {
    let half_cm = cm * T::half();
    let lambda = if q == T::zero() {
        T::infinity()
    } else {
        T::two() * T::PI() / q.abs()
    };
    WaveNumbers {
        q,
        cm,
        k: q + q,
        k1: -q + half_cm,
        k2: q + half_cm,
        lambda,
    }
}

/// Relative and centre-of-mass coordinates and momenta of a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmCoordinates<T> {
    pub x: T,
    pub cm_x: T,
    pub k: T,
    pub cm_k: T,
}

pub fn cm_transform<T: Real>(x1: T, x2: T, k1: T, k2: T) -> CmCoordinates<T> {
    CmCoordinates {
        x: x2 - x1,
        cm_x: (x1 + x2) * T::half(),
        k: k2 - k1,
        cm_k: k1 + k2,
    }
}

/// Inverse of [`cm_transform`]: returns `(x1, x2, k1, k2)`.
pub fn cm_inverse<T: Real>(c: &CmCoordinates<T>) -> (T, T, T, T) {
    let hx = c.x * T::half();
    let hk = c.k * T::half();
    let half_cm_k = c.cm_k * T::half();
    (c.cm_x - hx, c.cm_x + hx, half_cm_k - hk, half_cm_k + hk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cm_transform_trivial_cases() {
        let c = cm_transform(0.0, 0.0, 0.0, 0.0);
        assert_eq!((c.x, c.cm_x, c.k, c.cm_k), (0.0, 0.0, 0.0, 0.0));
        let c = cm_transform(-1.0, 1.0, -2.0, 2.0);
        assert_eq!((c.x, c.cm_x, c.k, c.cm_k), (2.0, 0.0, 4.0, 0.0));
    }

    #[test]
    fn cm_transform_ground_momenta() {
        let l = 2.0;
        let c = cm_transform(0.0, 0.0, -1.5 * PI / l, 2.5 * PI / l);
        assert!((c.k - 4.0 * PI / l).abs() < 1e-15);
        assert!((c.cm_k - PI / l).abs() < 1e-15);
    }

    #[test]
    fn decompose_examples() {
        let g = BoxGeometry::new(2.0).unwrap();
        let w = decompose_momenta(PI / g.half_length(), PI / g.length());
        assert!((w.k1 + 1.5 * PI / g.length()).abs() < 1e-15);
        assert!((w.k2 - 2.5 * PI / g.length()).abs() < 1e-15);

        let w = decompose_momenta(1.0, 0.0);
        assert_eq!((w.k1, w.k2), (-1.0, 1.0));
        let w = decompose_momenta(0.0f64, 2.0);
        assert_eq!((w.k1, w.k2), (1.0, 1.0));
        assert!(w.lambda.is_infinite());
    }

    #[test]
    fn collision_keeps_k_magnitude_and_cm() {
        let w = decompose_momenta(1.3f64, 0.7);
        let a = w.after_collision();
        assert_eq!(a.k.abs(), w.k.abs());
        assert!((a.k1 + a.k2 - w.cm).abs() < 1e-15);
        assert!((a.k1 - (1.3 + 0.35)).abs() < 1e-15);
    }

    #[test]
    fn geometry_rejects_bad_lengths() {
        assert!(BoxGeometry::new(0.0).is_err());
        assert!(BoxGeometry::new(-1.0).is_err());
        assert!(BoxGeometry::new(f64::NAN).is_err());
        let g = BoxGeometry::new(3.0f64).unwrap();
        assert_eq!(g.half_length(), 1.5);
        assert_eq!(BoxGeometry::from_half_length(1.5).unwrap(), g);
    }

    #[test]
    fn units_must_be_positive() {
        assert!(PhysicalUnits::new(1.0, 0.0, 1.0).is_err());
        assert!(PhysicalUnits::new(-1.0, 1.0, 1.0).is_err());
        assert!(PhysicalUnits::new(1.0, 1.0, 2.0).is_ok());
        assert!(PairQuantumNumbers::try_from_signed(-1, 0).is_err());
        assert!(PairQuantumNumbers::try_from_signed(0, -3).is_err());
    }
}
