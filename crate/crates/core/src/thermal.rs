//! Boltzmann occupation of the pair ladder and the thermally averaged zero-point force.

use num_rational::Ratio;

use crate::analytic::{
    cm_energy_ratio_exact, energy_levels, energy_ratio_exact, epsilon0, BoxGeometry, PairQuantumNumbers, PhysicalUnits,
};
use crate::num::{to_f64, Real};
use crate::{Error, Result};

/// Bound on the probability mass dropped by truncating the ladder.
pub const TAIL_TOLERANCE: f64 = 1e-12;

const MAX_LEVELS: usize = 1 << 20;

/// `T₀ = ε₀/k_B`.
pub fn characteristic_temperature<T: Real>(geometry: &BoxGeometry<T>, units: &PhysicalUnits<T>) -> T {
    epsilon0(geometry, units) / units.kb()
}

/// Which quantum numbers carry Boltzmann weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OccupationModel {
    /// Only the relative quantum number `n`; the CM ladder is left unweighted.
    #[default]
    RelativeOnly,
    /// Weight the joint `(n, N)` ladder and report the marginal over `n` together with
    /// the marginal over `N`.
    IncludeCm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cutoff {
    /// Smallest ladder whose neglected tail is below [`TAIL_TOLERANCE`].
    #[default]
    Auto,
    /// Highest retained `n` (inclusive); rejected if the tail bound is not met.
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermalOccupation<T> {
    pub temperature: T,
    pub t0: T,
    /// `P_n`, `n = 0..=n_cutoff`.
    pub probabilities: Vec<T>,
    pub n_cutoff: usize,
    pub model: OccupationModel,
    /// `P_N` when the CM ladder is weighted.
    pub cm_probabilities: Option<Vec<T>>,
}

impl<T: Real> ThermalOccupation<T> {
    pub fn ground(&self) -> T {
        self.probabilities[0]
    }

    /// `P₁/P₀`, zero when the ladder holds a single level.
    pub fn excited_ratio(&self) -> T {
        self.probabilities
            .get(1)
            .map_or(T::zero(), |&p| p / self.probabilities[0])
    }

    pub fn total(&self) -> T {
        self.probabilities.iter().fold(T::zero(), |a, &p| a + p)
    }
}

/// Normalized Boltzmann weights `exp(−beta·((j+1)² − 1))` for `j = 0..=cutoff`.
fn boltzmann_ladder<T: Real>(beta: T, cutoff: Cutoff, name: &'static str) -> Result<Vec<T>> {
    let tol = T::lit(TAIL_TOLERANCE);
    let weight = |j: usize| {
        let j1 = T::from_count(j + 1);
        (-beta * (j1 * j1 - T::one())).exp()
    };
    // Successive ratios shrink, so the tail after `c` is bounded by a geometric series
    // started at the first dropped term.
    let tail_bound = |c: usize| {
        let first = weight(c + 1);
        let r = weight(c + 2) / first;
        if first == T::zero() {
            T::zero()
        } else {
            first / (T::one() - r)
        }
    };
    let last = match cutoff {
        Cutoff::Fixed(c) => {
            let bound = tail_bound(c);
            if !(bound < tol) {
                return Err(Error::invalid(
                    name,
                    format!(
                        "cutoff {c} leaves a tail of {:e}, above {TAIL_TOLERANCE:e}",
                        to_f64(bound)
                    ),
                ));
            }
            c
        }
        Cutoff::Auto => {
            let mut c = 1;
            // Partition function ≥ 1 (the ground weight), so an absolute bound suffices.
            while !(tail_bound(c) < tol * T::lit(1e-4)) {
                c += 1;
                if c > MAX_LEVELS {
                    return Err(Error::NonConvergence(format!(
                        "{name}: Boltzmann tail not below tolerance"
                    )));
                }
            }
            c
        }
    };
    let w: Vec<T> = (0..=last).map(weight).collect();
    // Sum smallest first.
    let z = w.iter().rev().fold(T::zero(), |a, &x| a + x);
    Ok(w.into_iter().map(|x| x / z).collect())
}

fn check_temperature<T: Real>(t: T) -> Result<()> {
    if !(t > T::zero() && t.is_finite()) {
        return Err(Error::invalid("T", format!("must be positive, got {}", to_f64(t))));
    }
    Ok(())
}

/// `P_n ∝ exp[−((n+1)² − 1)·2ε₀/k_B T]`.
pub fn occupations<T: Real>(
    temperature: T,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    cutoff: Cutoff,
    model: OccupationModel,
) -> Result<ThermalOccupation<T>> {
    check_temperature(temperature)?;
    let eps0 = epsilon0(geometry, units);
    let kt = units.kb() * temperature;
    let probabilities = boltzmann_ladder(T::two() * eps0 / kt, cutoff, "n_cutoff")?;
    let cm_probabilities = match model {
        OccupationModel::RelativeOnly => None,
        // E_K(N) − E_K(0) = ((N+1)² − 1)·ε₀/8.
        OccupationModel::IncludeCm => Some(boltzmann_ladder(eps0 / (T::lit(8.0) * kt), Cutoff::Auto, "N_cutoff")?),
    };
    Ok(ThermalOccupation {
        temperature,
        t0: eps0 / units.kb(),
        n_cutoff: probabilities.len() - 1,
        probabilities,
        model,
        cm_probabilities,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalForce<T> {
    pub temperature: T,
    /// `⟨F⟩_T = Σ P_n·(n+1)²·h²/2md³`.
    pub mean: T,
    /// `h²/2md³`.
    pub zero_temperature: T,
    /// CM-motion pressure `Σ P_N·(N+1)²·h²/32md³`, reported separately and not part of `mean`.
    pub cm_contribution: Option<T>,
}

impl<T: Real> ThermalForce<T> {
    pub fn normalized(&self) -> T {
        self.mean / self.zero_temperature
    }
}

pub fn thermal_force<T: Real>(
    temperature: T,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    cutoff: Cutoff,
    model: OccupationModel,
) -> Result<ThermalForce<T>> {
    let occ = occupations(temperature, geometry, units, cutoff, model)?;
    let h = units.planck();
    let d = geometry.half_length();
    let f0 = h * h / (T::two() * units.mass() * d * d * d);
    let weighted = |p: &[T]| {
        p.iter().enumerate().rev().fold(T::zero(), |a, (j, &pj)| {
            let j1 = T::from_count(j + 1);
            a + pj * j1 * j1
        })
    };
    Ok(ThermalForce {
        temperature,
        mean: f0 * weighted(&occ.probabilities),
        zero_temperature: f0,
        cm_contribution: occ.cm_probabilities.as_deref().map(|p| f0 * weighted(p) / T::lit(16.0)),
    })
}

/// `P₁/P₀ = exp(−6ε₀/k_B T)`.
pub fn excited_ratio_closed_form<T: Real>(
    temperature: T,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
) -> Result<T> {
    check_temperature(temperature)?;
    Ok((-T::lit(6.0) * epsilon0(geometry, units) / (units.kb() * temperature)).exp())
}

/// Temperature at which `P₁/P₀` equals `ratio`: `6ε₀/(k_B ln(1/ratio))`.
pub fn temperature_for_excited_ratio<T: Real>(
    ratio: T,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
) -> Result<T> {
    if !(ratio > T::zero() && ratio < T::one()) {
        return Err(Error::invalid(
            "ratio",
            format!("must lie in (0, 1), got {}", to_f64(ratio)),
        ));
    }
    Ok(T::lit(6.0) * epsilon0(geometry, units) / (units.kb() * (-ratio.ln())))
}

/// Ground-state energy split between relative and CM motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KmEnergyShare<T> {
    pub e_cm: T,
    pub e_rel: T,
    pub epsilon0: T,
    /// `E_K(0)/ε₀ = 1/8`.
    pub cm_over_epsilon0: Ratio<i64>,
    /// `E_k(0)/ε₀ = 2`.
    pub rel_over_epsilon0: Ratio<i64>,
    /// `E_K(0)/E(0,0) = 1/17`.
    pub cm_over_total: Ratio<i64>,
}

pub fn km_energy_share<T: Real>(geometry: &BoxGeometry<T>, units: &PhysicalUnits<T>) -> KmEnergyShare<T> {
    let s = energy_levels(PairQuantumNumbers::GROUND, geometry, units);
    let cm = cm_energy_ratio_exact(0);
    let total = energy_ratio_exact(PairQuantumNumbers::GROUND);
    KmEnergyShare {
        e_cm: s.e_cm,
        e_rel: s.e_rel,
        epsilon0: s.epsilon0,
        cm_over_epsilon0: cm,
        rel_over_epsilon0: total - cm,
        cm_over_total: cm / total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn setup(d: f64) -> (BoxGeometry<f64>, PhysicalUnits<f64>) {
        (BoxGeometry::from_half_length(d).unwrap(), PhysicalUnits::reduced())
    }

    #[test]
    fn t0_values() {
        let (g, u) = setup(1.0);
        let t0 = characteristic_temperature(&g, &u);
        assert!((t0 - PI * PI / 2.0).abs() < 1e-14);
        let (g2, _) = setup(2.0);
        assert!((characteristic_temperature(&g2, &u) - t0 / 4.0).abs() < 1e-14);
    }

    #[test]
    fn normalization_and_monotonicity_over_ladder() {
        let (g, u) = setup(1.0);
        let t0 = characteristic_temperature(&g, &u);
        for e in -8..=8 {
            let t = t0 * 10f64.powf(e as f64 / 4.0);
            let occ = occupations(t, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).unwrap();
            assert!((occ.total() - 1.0).abs() < 1e-12);
            assert!(occ.probabilities.windows(2).all(|w| w[1] <= w[0]));
            let doubled = occupations(
                t,
                &g,
                &u,
                Cutoff::Fixed(2 * occ.n_cutoff),
                OccupationModel::RelativeOnly,
            )
            .unwrap();
            for (a, b) in occ.probabilities.iter().zip(&doubled.probabilities) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ratio_at_t0_is_e_minus_six() {
        let (g, u) = setup(1.3);
        let t0 = characteristic_temperature(&g, &u);
        let occ = occupations(t0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).unwrap();
        assert!((occ.excited_ratio() / (-6.0f64).exp() - 1.0).abs() < 1e-12);
        let t10 = temperature_for_excited_ratio(0.1, &g, &u).unwrap();
        assert!((t10 / t0 - 6.0 / 10f64.ln()).abs() < 1e-12);
        let r = excited_ratio_closed_form(t10, &g, &u).unwrap();
        assert!((r - 0.1).abs() < 1e-14);
    }

    #[test]
    fn force_limits() {
        let (g, u) = setup(1.0);
        let t0 = characteristic_temperature(&g, &u);
        let cold = thermal_force(1e-3 * t0, &g, &u, Cutoff::Fixed(20), OccupationModel::RelativeOnly).unwrap();
        assert!((cold.normalized() - 1.0).abs() < 1e-10);
        assert!((cold.zero_temperature - 2.0 * PI * PI).abs() < 1e-12);
        let at_t0 = thermal_force(t0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).unwrap();
        assert!(at_t0.normalized() - 1.0 < 0.02);
        let hot = thermal_force(10.0 * t0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).unwrap();
        assert!(hot.mean > at_t0.mean);
        assert!(at_t0.cm_contribution.is_none());
    }

    #[test]
    fn cm_variant_leaves_relative_marginal_unchanged() {
        let (g, u) = setup(1.0);
        let t0 = characteristic_temperature(&g, &u);
        let a = occupations(3.0 * t0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).unwrap();
        let b = occupations(3.0 * t0, &g, &u, Cutoff::Auto, OccupationModel::IncludeCm).unwrap();
        assert_eq!(a.probabilities, b.probabilities);
        let cm = b.cm_probabilities.unwrap();
        assert!((cm.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let f = thermal_force(1e-3 * t0, &g, &u, Cutoff::Auto, OccupationModel::IncludeCm).unwrap();
        assert!((f.cm_contribution.unwrap() / f.zero_temperature - 1.0 / 16.0).abs() < 1e-10);
    }

    #[test]
    fn errors() {
        let (g, u) = setup(1.0);
        assert!(occupations(0.0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).is_err());
        assert!(thermal_force(-1.0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).is_err());
        let t0 = characteristic_temperature(&g, &u);
        assert!(occupations(100.0 * t0, &g, &u, Cutoff::Fixed(3), OccupationModel::RelativeOnly).is_err());
        assert!(temperature_for_excited_ratio(1.5, &g, &u).is_err());
    }

    #[test]
    fn km_share_fractions() {
        let (g, u) = setup(0.7);
        let s = km_energy_share(&g, &u);
        assert_eq!(s.cm_over_epsilon0, Ratio::new(1, 8));
        assert_eq!(s.rel_over_epsilon0, Ratio::from_integer(2));
        assert_eq!(s.cm_over_total, Ratio::new(1, 17));
        assert!((s.e_cm / s.epsilon0 - 0.125).abs() < 1e-14);
        assert!((s.e_rel / s.epsilon0 - 2.0).abs() < 1e-14);
    }
}
