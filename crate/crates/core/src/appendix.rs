//! Power-law contact strength `A = B·x^−(1+α)` and the limit of `⟨A δ(x)⟩`.
//!
//! With `|ψ(x)|² ∝ sin²(kx/2)` the contact expectation reduces to
//! `2B sin²(kx/2)/x^(1+α)` as `x → 0`, which vanishes, stays at `Bk²/2` or diverges
//! according to whether `α` is below, at or above one.

use crate::analytic::PhysicalUnits;
use crate::num::{to_f64, Real};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawStrength<T> {
    b: T,
    alpha: T,
}

impl<T: Real> PowerLawStrength<T> {
    pub fn new(b: T, alpha: T) -> Result<Self> {
        if !(b > T::zero() && b.is_finite()) {
            return Err(Error::invalid("B", format!("must be positive, got {}", to_f64(b))));
        }
        if !(alpha > T::zero() && alpha.is_finite()) {
            return Err(Error::invalid(
                "alpha",
                format!("must be positive, got {}", to_f64(alpha)),
            ));
        }
        Ok(Self { b, alpha })
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `A(x) = B·x^−(1+α)`.
    pub fn strength_at(&self, x: T) -> T {
        self.b * x.powf(-(T::one() + self.alpha))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaRegime<T> {
    Zero,
    Finite { value: T },
    Divergent,
}

impl<T> DeltaRegime<T> {
    pub fn label(&self) -> &'static str {
        match self {
            DeltaRegime::Zero => "Zero",
            DeltaRegime::Finite { .. } => "Finite",
            DeltaRegime::Divergent => "Divergent",
        }
    }
}

/// `2B sin²(kx/2)/x^(1+α)` for `x > 0`.
pub fn integrand_eval<T: Real>(p: &PowerLawStrength<T>, k: T, x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::invalid("x", format!("must be positive, got {}", to_f64(x))));
    }
    let s = (k * x * T::half()).sin();
    Ok(T::two() * p.b * s * s / x.powf(T::one() + p.alpha))
}

/// Leading small-`x` form `Bk²x^(1−α)/2`.
pub fn integrand_small_x<T: Real>(p: &PowerLawStrength<T>, k: T, x: T) -> T {
    p.b * k * k * x.powf(T::one() - p.alpha) * T::half()
}

/// Exact classification on `α`; the comparison with one is deliberately not tolerant.
pub fn classify_limit<T: Real>(p: &PowerLawStrength<T>, k: T) -> DeltaRegime<T> {
    if p.alpha < T::one() {
        DeltaRegime::Zero
    } else if p.alpha == T::one() {
        DeltaRegime::Finite {
            value: p.b * k * k * T::half(),
        }
    } else {
        DeltaRegime::Divergent
    }
}

/// Geometric ladder `x = 10⁻¹ … 10⁻⁹`.
pub fn x_ladder<T: Real>() -> Vec<T> {
    (1..=9).map(|e| T::lit(10f64.powi(-e))).collect()
}

/// Numeric confirmation of the regime from the integrand sampled on [`x_ladder`].
#[derive(Debug, Clone, PartialEq)]
pub struct LimitTrend<T> {
    pub xs: Vec<T>,
    pub values: Vec<T>,
    /// d log f / d log x between the two smallest ladder points, where the small-`x`
    /// form is accurate; it tends to `1 − α`.
    pub slope: T,
}

impl<T: Real> LimitTrend<T> {
    /// Regime implied by the sign of the measured slope, for comparison with
    /// [`classify_limit`]; slopes within `flat_tol` of zero count as finite.
    pub fn implied_label(&self, flat_tol: T) -> &'static str {
        if self.slope > flat_tol {
            "Zero"
        } else if self.slope < -flat_tol {
            "Divergent"
        } else {
            "Finite"
        }
    }
}

pub fn limit_trend<T: Real>(p: &PowerLawStrength<T>, k: T) -> Result<LimitTrend<T>> {
    let xs = x_ladder::<T>();
    let values = xs
        .iter()
        .map(|&x| integrand_eval(p, k, x))
        .collect::<Result<Vec<_>>>()?;
    let n = xs.len();
    let slope = (values[n - 1] / values[n - 2]).ln() / (xs[n - 1] / xs[n - 2]).ln();
    Ok(LimitTrend { xs, values, slope })
}

/// Bookkeeping of the effective-mass reading of the `α = 1` contact energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveMass<T> {
    pub b: T,
    /// `m* = m/(1 + 2Bm/ħ²)`.
    pub mass_eff: T,
    /// `E*/E_k = 1 + 2Bm/ħ²`, the same for every `k`.
    pub energy_scale: T,
    /// Bounds of the contact term at `α = 1`: any value in `[0, Bk²/2]` per unit `k²`
    /// is consistent with the limit, so both endpoints are surfaced.
    pub contact_endpoints_per_k2: (T, T),
    /// The non-zero contact energy is treated as fictitious: it never enters the
    /// operative pair spectrum, which stays `E_k + E_K`.
    pub fictitious: bool,
}

impl<T: Real> EffectiveMass<T> {
    /// `E_k = ħ²k²/4m`, the contact-free relative energy.
    pub fn bare_energy(&self, k: T, units: &PhysicalUnits<T>) -> T {
        units.hbar() * units.hbar() * k * k / (T::lit(4.0) * units.mass())
    }

    /// `E* = ħ²k²/4m*`.
    pub fn energy(&self, k: T, units: &PhysicalUnits<T>) -> T {
        units.hbar() * units.hbar() * k * k / (T::lit(4.0) * self.mass_eff)
    }

    /// `ħ²k²/4m + Bk²/2`.
    pub fn energy_with_contact(&self, k: T, units: &PhysicalUnits<T>) -> T {
        self.bare_energy(k, units) + self.b * k * k * T::half()
    }

    /// `|E* − (E_k + Bk²/2)| / E*`.
    pub fn identity_residual(&self, k: T, units: &PhysicalUnits<T>) -> T {
        let e = self.energy(k, units);
        ((e - self.energy_with_contact(k, units)) / e).abs()
    }
}

pub fn effective_mass<T: Real>(b: T, units: &PhysicalUnits<T>) -> Result<EffectiveMass<T>> {
    if !(b >= T::zero() && b.is_finite()) {
        return Err(Error::invalid("B", format!("must be non-negative, got {}", to_f64(b))));
    }
    let m = units.mass();
    let scale = T::one() + T::two() * b * m / (units.hbar() * units.hbar());
    Ok(EffectiveMass {
        b,
        mass_eff: m / scale,
        energy_scale: scale,
        contact_endpoints_per_k2: (T::zero(), b * T::half()),
        fictitious: true,
    })
}
