//! Allowed single-particle momentum pairs under the macro-orbital scheme versus the
//! integer plane-wave scheme, in units of `π/L`.

use num_rational::Ratio;

use super::model::{BoxGeometry, PairQuantumNumbers};
use crate::num::Real;

/// Momentum in exact multiples of `π/L`.
pub type PiOverL = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpectrumScheme {
    MacroOrbital,
    PlaneWaveInteger,
    NonInteracting,
}

impl SpectrumScheme {
    pub fn label(&self) -> &'static str {
        match self {
            SpectrumScheme::MacroOrbital => "macro-orbital",
            SpectrumScheme::PlaneWaveInteger => "plane-wave-integer",
            SpectrumScheme::NonInteracting => "non-interacting",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentumPair {
    pub scheme: SpectrumScheme,
    pub label: String,
    /// Quantum numbers `(n, N)` for macro-orbital rows.
    pub numbers: Option<PairQuantumNumbers>,
    pub k1: PiOverL,
    pub k2: PiOverL,
}

impl MomentumPair {
    pub fn k1_value<T: Real>(&self, geometry: &BoxGeometry<T>) -> T {
        ratio_value::<T>(self.k1) * T::PI() / geometry.length()
    }

    pub fn k2_value<T: Real>(&self, geometry: &BoxGeometry<T>) -> T {
        ratio_value::<T>(self.k2) * T::PI() / geometry.length()
    }

    /// `k1² + k2²` in units of `(π/L)²`, the ordering key for energies.
    pub fn norm_sq(&self) -> PiOverL {
        self.k1 * self.k1 + self.k2 * self.k2
    }
}

pub(crate) fn ratio_value<T: Real>(r: Ratio<i64>) -> T {
    T::from_i64(*r.numer()).unwrap() / T::from_i64(*r.denom()).unwrap()
}

/// Side-by-side enumeration. It is illustrative only: in the macro-orbital picture the
/// pair has no independent single-particle states.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumComparison {
    pub rows: Vec<MomentumPair>,
    pub illustrative_only: bool,
}

impl SpectrumComparison {
    pub fn scheme_rows(&self, scheme: SpectrumScheme) -> impl Iterator<Item = &MomentumPair> {
        self.rows.iter().filter(move |r| r.scheme == scheme)
    }

    /// Lowest-`k1² + k2²` row of a scheme.
    pub fn ground(&self, scheme: SpectrumScheme) -> Option<&MomentumPair> {
        self.scheme_rows(scheme).min_by_key(|r| r.norm_sq())
    }
}

/// Macro-orbital pair for `(n, N)`: `k1 = −q_n + K_N/2`, `k2 = q_n + K_N/2`.
pub fn macro_orbital_pair(numbers: PairQuantumNumbers) -> MomentumPair {
    // q_n = 2(n+1)·π/L and K_N/2 = (N+1)/2·π/L.
    let q = Ratio::from_integer(2 * (i64::from(numbers.n) + 1));
    let half_cm = Ratio::new(i64::from(numbers.cm) + 1, 2);
    MomentumPair {
        scheme: SpectrumScheme::MacroOrbital,
        label: format!("n={},N={}", numbers.n, numbers.cm),
        numbers: Some(numbers),
        k1: -q + half_cm,
        k2: q + half_cm,
    }
}

pub fn spectrum_compare(n_max: u32, cm_max: u32) -> SpectrumComparison {
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for cm in 0..=cm_max {
            rows.push(macro_orbital_pair(PairQuantumNumbers::new(n, cm)));
        }
    }

    // Plane-wave scheme covers the same largest |k| as the macro-orbital table.
    let reach = Ratio::from_integer(2 * (i64::from(n_max) + 1)) + Ratio::new(i64::from(cm_max) + 1, 2);
    let bound = reach.ceil().to_integer();
    let mut plane: Vec<MomentumPair> = Vec::new();
    for a in 1..=bound {
        for b in 1..=a {
            plane.push(MomentumPair {
                scheme: SpectrumScheme::PlaneWaveInteger,
                label: format!("{a},-{b}"),
                numbers: None,
                k1: Ratio::from_integer(a),
                k2: Ratio::from_integer(-b),
            });
        }
    }
    plane.sort_by(|x, y| x.norm_sq().cmp(&y.norm_sq()).then(x.k1.cmp(&y.k1)));
    rows.extend(plane);

    for (s1, s2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        rows.push(MomentumPair {
            scheme: SpectrumScheme::NonInteracting,
            label: format!("{s1:+},{s2:+}"),
            numbers: None,
            k1: Ratio::from_integer(s1),
            k2: Ratio::from_integer(s2),
        });
    }

    SpectrumComparison {
        rows,
        illustrative_only: true,
    }
}
