//! Quantized pair spectrum, zero-point force and the non-interacting reference.

use num_rational::Ratio;

use super::model::{decompose_momenta, BoxGeometry, PairQuantumNumbers, PhysicalUnits, WaveNumbers};
use crate::num::{to_f64, Real};
use crate::{Error, Result};

/// Relative wavenumber `q_n = (n+1)π/d`.
pub fn quantized_q<T: Real>(n: u32, geometry: &BoxGeometry<T>) -> T {
    T::from_u32(n + 1).unwrap() * T::PI() / geometry.half_length()
}

/// Centre-of-mass wavenumber `K_N = (N+1)π/L`.
pub fn quantized_cm_k<T: Real>(cm: u32, geometry: &BoxGeometry<T>) -> T {
    T::from_u32(cm + 1).unwrap() * T::PI() / geometry.length()
}

/// Ground-state energy `ε₀ = h²/8md²` of one particle in a box of size `d`.
pub fn epsilon0<T: Real>(geometry: &BoxGeometry<T>, units: &PhysicalUnits<T>) -> T {
    let h = units.planck();
    let d = geometry.half_length();
    h * h / (T::lit(8.0) * units.mass() * d * d)
}

/// A quantized pair level with its energy split into relative and CM parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState<T> {
    pub numbers: PairQuantumNumbers,
    pub waves: WaveNumbers<T>,
    pub geometry: BoxGeometry<T>,
    /// Relative-motion energy `E_k = ħ²k²/4m`.
    pub e_rel: T,
    /// Centre-of-mass energy `E_K = ħ²K²/4m`.
    pub e_cm: T,
    pub e_total: T,
    pub epsilon0: T,
}

impl<T: Real> PairState<T> {
    /// `E_total / ε₀`.
    pub fn ratio_to_epsilon0(&self) -> T {
        self.e_total / self.epsilon0
    }

    /// Share of either particle; the superposed pair splits `E_k + E_K` evenly.
    pub fn per_particle_share(&self) -> T {
        self.e_total * T::half()
    }
}

pub fn energy_levels<T: Real>(
    numbers: PairQuantumNumbers,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
) -> PairState<T> {
    let q = quantized_q(numbers.n, geometry);
    let cm = quantized_cm_k(numbers.cm, geometry);
    let waves = decompose_momenta(q, cm);
    let c = units.hbar() * units.hbar() / (T::lit(4.0) * units.mass());
    let e_rel = c * waves.k * waves.k;
    let e_cm = c * cm * cm;
    PairState {
        numbers,
        waves,
        geometry: *geometry,
        e_rel,
        e_cm,
        e_total: e_rel + e_cm,
        epsilon0: epsilon0(geometry, units),
    }
}

/// `E(n, N) = (h²/16mL²)[16(n+1)² + (N+1)²]`, evaluated directly.
pub fn pair_energy_closed_form<T: Real>(
    numbers: PairQuantumNumbers,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
) -> T {
    let h = units.planck();
    let l = geometry.length();
    let n1 = T::from_u32(numbers.n + 1).unwrap();
    let cm1 = T::from_u32(numbers.cm + 1).unwrap();
    h * h / (T::lit(16.0) * units.mass() * l * l) * (T::lit(16.0) * n1 * n1 + cm1 * cm1)
}

/// Exact `E(n, N)/ε₀ = 2(n+1)² + (N+1)²/8`.
pub fn energy_ratio_exact(numbers: PairQuantumNumbers) -> Ratio<i64> {
    let n1 = i64::from(numbers.n) + 1;
    let cm1 = i64::from(numbers.cm) + 1;
    Ratio::from_integer(2 * n1 * n1) + Ratio::new(cm1 * cm1, 8)
}

/// Exact `E_K(N)/ε₀ = (N+1)²/8`.
pub fn cm_energy_ratio_exact(cm: u32) -> Ratio<i64> {
    let cm1 = i64::from(cm) + 1;
    Ratio::new(cm1 * cm1, 8)
}

/// Ground state of two non-interacting particles in the same box, for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonInteractingReport<T> {
    /// `ε₀' = h²/8mL²`.
    pub epsilon0_free: T,
    /// `q₀' = π/L`.
    pub q0_free: T,
    pub epsilon0: T,
    pub q0: T,
    pub energy_ratio: T,
    pub momentum_ratio: T,
}

pub fn noninteracting_comparison<T: Real>(
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
) -> NonInteractingReport<T> {
    let h = units.planck();
    let l = geometry.length();
    let epsilon0_free = h * h / (T::lit(8.0) * units.mass() * l * l);
    let q0_free = T::PI() / l;
    let eps0 = epsilon0(geometry, units);
    let q0 = quantized_q(0, geometry);
    NonInteractingReport {
        epsilon0_free,
        q0_free,
        epsilon0: eps0,
        q0,
        energy_ratio: eps0 / epsilon0_free,
        momentum_ratio: q0 / q0_free,
    }
}

/// Zero-point repulsion from both routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPointForce<T> {
    /// `h²/2md³`.
    pub closed_form: T,
    /// Central difference of `-∂_d E(0)` with `E(0) = 2ε₀(d)`.
    pub finite_difference: T,
}

impl<T: Real> ZeroPointForce<T> {
    pub fn relative_discrepancy(&self) -> T {
        ((self.finite_difference - self.closed_form) / self.closed_form).abs()
    }
}

pub fn zero_point_force<T: Real>(geometry: &BoxGeometry<T>, units: &PhysicalUnits<T>) -> Result<ZeroPointForce<T>> {
    let d = geometry.half_length();
    let h = units.planck();
    let closed_form = h * h / (T::two() * units.mass() * d * d * d);
    let ground_rel = |half: T| -> Result<T> {
        let g = BoxGeometry::from_half_length(half)?;
        Ok(T::two() * epsilon0(&g, units))
    };
    let step = T::lit(1e-5) * d;
    let finite_difference = -(ground_rel(d + step)? - ground_rel(d - step)?) / (T::two() * step);
    Ok(ZeroPointForce {
        closed_form,
        finite_difference,
    })
}

/// Validity of the contact-interaction picture for particles of hard-core diameter `sigma`:
/// true when `sigma = 0` or `q ≤ 2π/σ`.
pub fn hc_validity_check<T: Real>(q: T, sigma: T) -> Result<bool> {
    if sigma < T::zero() || sigma.is_nan() {
        return Err(Error::invalid(
            "sigma",
            format!("must be non-negative, got {}", to_f64(sigma)),
        ));
    }
    if sigma == T::zero() {
        return Ok(true);
    }
    Ok(q.abs() * sigma <= T::two() * T::PI())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn geom(l: f64) -> BoxGeometry<f64> {
        BoxGeometry::new(l).unwrap()
    }

    #[test]
    fn quantized_wavenumbers() {
        let g = BoxGeometry::from_half_length(1.0).unwrap();
        assert_relative_eq!(quantized_q(0, &g), PI);
        assert_relative_eq!(quantized_q(1, &g), 2.0 * PI);
        assert_relative_eq!(quantized_q(0, &BoxGeometry::from_half_length(2.0).unwrap()), PI / 2.0);
        assert_relative_eq!(quantized_cm_k(0, &geom(2.0)), PI / 2.0);
        assert_relative_eq!(quantized_cm_k(3, &geom(1.0)), 4.0 * PI);
        assert_relative_eq!(quantized_cm_k(0, &geom(4.0)), quantized_cm_k(0, &geom(2.0)) / 2.0);
    }

    #[test]
    fn ground_energy_ratio_is_seventeen_eighths() {
        let s = energy_levels(PairQuantumNumbers::GROUND, &geom(2.0), &PhysicalUnits::reduced());
        assert_relative_eq!(s.ratio_to_epsilon0(), 2.125, max_relative = 1e-14);
        assert_relative_eq!(s.e_cm / s.e_total, 1.0 / 17.0, max_relative = 1e-14);
        assert_eq!(energy_ratio_exact(PairQuantumNumbers::GROUND), Ratio::new(17, 8));
        // 2.12 to three significant figures.
        assert!((s.ratio_to_epsilon0() - 2.12).abs() <= 0.005 + 1e-12);
    }

    #[test]
    fn both_energy_routes_agree() {
        let units = PhysicalUnits::new(1.3, 0.7, 1.0).unwrap();
        for l in [0.5, 2.0, 7.0] {
            for n in 0..5 {
                for cm in 0..5 {
                    let nn = PairQuantumNumbers::new(n, cm);
                    let s = energy_levels(nn, &geom(l), &units);
                    let direct = pair_energy_closed_form(nn, &geom(l), &units);
                    assert_relative_eq!(s.e_total, direct, max_relative = 1e-13);
                    assert_relative_eq!(s.e_total, s.e_rel + s.e_cm, max_relative = 1e-15);
                    let exact = energy_ratio_exact(nn);
                    assert_relative_eq!(
                        s.ratio_to_epsilon0(),
                        *exact.numer() as f64 / *exact.denom() as f64,
                        max_relative = 1e-13
                    );
                }
            }
        }
    }

    #[test]
    fn first_excited_relative_level_reduced_units() {
        // n = 1, N = 0, L = 2: E = (4π²/16·4)[64 + 1] = 65π²/16.
        let s = energy_levels(PairQuantumNumbers::new(1, 0), &geom(2.0), &PhysicalUnits::reduced());
        assert_relative_eq!(s.e_total, 65.0 * PI * PI / 16.0, max_relative = 1e-14);
        assert_relative_eq!(s.e_rel, 4.0 * PI * PI, max_relative = 1e-14);
    }

    #[test]
    fn noninteracting_ratios() {
        let r = noninteracting_comparison(&geom(2.0), &PhysicalUnits::reduced());
        assert_relative_eq!(r.energy_ratio, 4.0, max_relative = 1e-14);
        assert_relative_eq!(r.momentum_ratio, 2.0, max_relative = 1e-14);
        let r2 = noninteracting_comparison(&geom(4.0), &PhysicalUnits::reduced());
        assert_relative_eq!(r2.epsilon0_free, r.epsilon0_free / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn zero_point_force_routes_and_scaling() {
        let units = PhysicalUnits::<f64>::reduced();
        let h = units.planck();
        let mut scaled = Vec::new();
        for d in [0.5, 1.0, 2.0] {
            let g = BoxGeometry::from_half_length(d).unwrap();
            let f = zero_point_force(&g, &units).unwrap();
            assert_relative_eq!(f.closed_form * 2.0 * d.powi(3) / (h * h), 1.0, max_relative = 1e-14);
            assert!(f.relative_discrepancy() < 1e-6, "{f:?}");
            // 4h²/mL³ form.
            assert_relative_eq!(f.closed_form, 4.0 * h * h / g.length().powi(3), max_relative = 1e-14);
            scaled.push(f.closed_form * d.powi(3));
        }
        assert_relative_eq!(scaled[0], scaled[2], max_relative = 1e-14);
    }

    #[test]
    fn validity_range() {
        assert!(hc_validity_check(1e9, 0.0).unwrap());
        let sigma = 0.25;
        assert!(hc_validity_check(2.0 * PI / sigma, sigma).unwrap());
        assert!(!hc_validity_check(3.0 * PI / sigma, sigma).unwrap());
        assert!(hc_validity_check(1.0, -1.0).is_err());
    }
}
