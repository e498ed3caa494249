//! Macro-orbitals: single-particle pair waveforms, the paired kinetic operator, and
//! two-particle symmetrized products.

use num_complex::Complex;

use super::waveform::{ExchangeSign, RelativeWaveform, SymmetryKind};
use crate::num::{to_f64, Interval, Real};
use crate::{Error, Result};

/// `ξ(x, X) = B·ζ_q(x)·exp(iKX)` for one particle of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroOrbital<T> {
    relative: RelativeWaveform<T>,
    cm_k: T,
    norm_b: T,
}

impl<T: Real> MacroOrbital<T> {
    /// Builds the orbital and fixes `B` so that `∫|ξ|²dx = 1` over `exclusive`.
    pub fn new(q: T, cm_k: T, symmetry: SymmetryKind, exclusive: Interval<T>) -> Result<Self> {
        if !(q > T::zero() && q.is_finite()) {
            return Err(Error::invalid("q", format!("must be positive, got {}", to_f64(q))));
        }
        if !cm_k.is_finite() {
            return Err(Error::invalid("K", "must be finite"));
        }
        let relative = RelativeWaveform::new(symmetry, q, exclusive);
        let norm_sq = relative.norm_sq_closed(exclusive.lo, exclusive.hi);
        if !(norm_sq > T::zero()) {
            return Err(Error::invalid(
                "exclusive",
                "waveform has zero weight on the exclusive domain",
            ));
        }
        Ok(Self {
            relative,
            cm_k,
            norm_b: norm_sq.sqrt().recip(),
        })
    }

    /// Orbital whose exclusive domain is one antinodal loop `[0, π/q]`.
    pub fn single_loop(q: T, cm_k: T, symmetry: SymmetryKind) -> Result<Self> {
        let loop_len = T::PI() / q;
        Self::new(q, cm_k, symmetry, Interval::new(T::zero(), loop_len)?)
    }

    pub fn q(&self) -> T {
        self.relative.q
    }

    pub fn cm_k(&self) -> T {
        self.cm_k
    }

    pub fn symmetry(&self) -> SymmetryKind {
        self.relative.symmetry
    }

    pub fn norm_b(&self) -> T {
        self.norm_b
    }

    pub fn exclusive_domain(&self) -> Interval<T> {
        self.relative.domain
    }

    /// `B·ζ_q(x)`, the part that does not overlap the partner orbital.
    pub fn relative_part(&self, x: T) -> T {
        self.norm_b * self.relative.eval(x)
    }

    pub fn eval(&self, x: T, cm_x: T) -> Complex<T> {
        Complex::from_polar(T::one(), self.cm_k * cm_x) * self.relative_part(x)
    }

    /// Energy of the `q`-motion, `ħ²q²/2m`.
    pub fn q_energy(&self, hbar: T, mass: T) -> T {
        hbar * hbar * self.q() * self.q() / (T::two() * mass)
    }

    /// Energy of the `K`-motion, `ħ²K²/8m`.
    pub fn cm_energy(&self, hbar: T, mass: T) -> T {
        hbar * hbar * self.cm_k * self.cm_k / (T::lit(8.0) * mass)
    }
}

/// Rectangular sampling patch for the paired operator check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorGrid<T> {
    pub x_start: T,
    pub cm_start: T,
    pub spacing: T,
    pub nx: usize,
    pub ncm: usize,
}

impl<T: Real> OperatorGrid<T> {
    /// Patch spanning one loop `[0, π/q]` in `x` with `points_per_loop` intervals and
    /// `cm_points` samples in `X` starting at 0 at the same spacing.
    pub fn over_loop(mo: &MacroOrbital<T>, points_per_loop: usize, cm_points: usize) -> Self {
        let spacing = T::PI() / mo.q() / T::from_count(points_per_loop.max(1));
        Self {
            x_start: T::zero(),
            cm_start: T::zero(),
            spacing,
            nx: points_per_loop + 1,
            ncm: cm_points,
        }
    }
}

/// Outcome of applying the paired operator to a sampled macro-orbital.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigencheckReport<T> {
    /// `½(E_k + E_K)` with the pair energies `E_k = ħ²k²/4m` and `E_K = ħ²K²/4m`,
    /// equal to `ħ²q²/2m + ħ²K²/8m`.
    pub expected: T,
    /// Rayleigh quotient of the discrete operator over interior samples.
    pub measured: T,
    /// `‖h(i)ξ − expected·ξ‖ / ‖ξ‖` over interior samples.
    pub residual: T,
    pub interior_points: usize,
}

/// Applies `h(i) = −(ħ²/8m)∂²_X − (ħ²/2m)∂²_x` by central differences to sampled `ξ`.
pub fn paired_operator_eigencheck<T: Real>(
    mo: &MacroOrbital<T>,
    grid: &OperatorGrid<T>,
    hbar: T,
    mass: T,
) -> Result<EigencheckReport<T>> {
    let min_per_loop = T::lit(50.0);
    let h = grid.spacing;
    if !(h > T::zero()) || grid.nx < 3 || grid.ncm < 3 {
        return Err(Error::UnderResolved(
            "operator grid needs at least 3x3 samples and positive spacing".into(),
        ));
    }
    let q_loop = T::PI() / mo.q();
    if q_loop / h < min_per_loop {
        return Err(Error::UnderResolved(format!(
            "{:.1} points per relative loop, need at least 50",
            to_f64(q_loop / h)
        )));
    }
    if mo.cm_k() != T::zero() && T::PI() / mo.cm_k().abs() / h < min_per_loop {
        return Err(Error::UnderResolved(
            "centre-of-mass loop has fewer than 50 points".into(),
        ));
    }

    let samples: Vec<Vec<Complex<T>>> = (0..grid.nx)
        .map(|i| {
            let x = grid.x_start + h * T::from_count(i);
            (0..grid.ncm)
                .map(|j| mo.eval(x, grid.cm_start + h * T::from_count(j)))
                .collect()
        })
        .collect();

    let c_cm = hbar * hbar / (T::lit(8.0) * mass * h * h);
    let c_rel = hbar * hbar / (T::two() * mass * h * h);
    let expected = mo.q_energy(hbar, mass) + mo.cm_energy(hbar, mass);

    let mut resid_sq = T::zero();
    let mut norm_sq = T::zero();
    let mut rayleigh = T::zero();
    let mut count = 0usize;
    for i in 1..grid.nx - 1 {
        for j in 1..grid.ncm - 1 {
            let v = samples[i][j];
            let d2_cm = samples[i][j + 1] + samples[i][j - 1] - v * T::two();
            let d2_rel = samples[i + 1][j] + samples[i - 1][j] - v * T::two();
            let hv = -(d2_cm * c_cm) - d2_rel * c_rel;
            resid_sq = resid_sq + (hv - v * expected).norm_sqr();
            norm_sq = norm_sq + v.norm_sqr();
            rayleigh = rayleigh + (v.conj() * hv).re;
            count += 1;
        }
    }
    if !(norm_sq > T::zero()) {
        return Err(Error::invalid("grid", "orbital vanishes on every interior sample"));
    }
    Ok(EigencheckReport {
        expected,
        measured: rayleigh / norm_sq,
        residual: (resid_sq / norm_sq).sqrt(),
        interior_points: count,
    })
}

/// Position of one particle in macro-orbital coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitalCoords<T> {
    pub x: T,
    pub cm_x: T,
}

/// Two-particle state built from two macro-orbitals by permuting their `K` values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetrizedPair<T> {
    pub first: MacroOrbital<T>,
    pub second: MacroOrbital<T>,
    pub sign: ExchangeSign,
}

/// One permutation term: sign and the `K` assigned to particles 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationTerm<T> {
    pub sign: T,
    pub cm_k: [T; 2],
}

pub fn two_body_symmetrized_product<T: Real>(
    first: MacroOrbital<T>,
    second: MacroOrbital<T>,
    sign: ExchangeSign,
) -> SymmetrizedPair<T> {
    SymmetrizedPair { first, second, sign }
}

impl<T: Real> SymmetrizedPair<T> {
    pub fn permutation_terms(&self) -> Vec<PermutationTerm<T>> {
        let (a, b) = (self.first.cm_k(), self.second.cm_k());
        vec![
            PermutationTerm {
                sign: T::one(),
                cm_k: [a, b],
            },
            PermutationTerm {
                sign: self.sign.factor(),
                cm_k: [b, a],
            },
        ]
    }

    /// `B₁B₂·ζ₁(x₁)ζ₂(x₂)·Σ_P (±1)^P exp(i(K_P1·X₁ + K_P2·X₂))`.
    pub fn eval(&self, p1: OrbitalCoords<T>, p2: OrbitalCoords<T>) -> Complex<T> {
        let amp = self.first.relative_part(p1.x) * self.second.relative_part(p2.x);
        let phases = self
            .permutation_terms()
            .into_iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, term| {
                acc + Complex::from_polar(T::one(), term.cm_k[0] * p1.cm_x + term.cm_k[1] * p2.cm_x) * term.sign
            });
        phases * amp
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_simpson;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn node_at_contact_and_flat_modulus() {
        let mo = MacroOrbital::single_loop(PI, PI / 2.0, SymmetryKind::BosonicEvenCusp).unwrap();
        assert_eq!(mo.eval(0.0, 0.3).norm(), 0.0);
        let a = mo.eval(0.37, -0.8).norm();
        for cm_x in [-0.2, 0.0, 0.9, 4.0] {
            assert_relative_eq!(mo.eval(0.37, cm_x).norm(), a, max_relative = 1e-14);
        }
    }

    #[test]
    fn normalization_fixes_b() {
        for sym in [SymmetryKind::FermionicOdd, SymmetryKind::BosonicEvenCusp] {
            let mo = MacroOrbital::<f64>::single_loop(2.5, 1.0, sym).unwrap();
            let dom = mo.exclusive_domain();
            let norm = adaptive_simpson(|x| mo.eval(x, 0.7).norm_sqr(), dom.lo, dom.hi, 1e-12);
            assert!((norm - 1.0).abs() < 1e-10);
            // One loop of 2 sin² has weight π/q.
            assert_relative_eq!(mo.norm_b(), (2.5 / PI).sqrt(), max_relative = 1e-14);
        }
    }

    #[test]
    fn eigencheck_without_cm_motion() {
        let mo = MacroOrbital::single_loop(PI, 0.0, SymmetryKind::FermionicOdd).unwrap();
        let grid = OperatorGrid::over_loop(&mo, 1000, 9);
        let r = paired_operator_eigencheck(&mo, &grid, 1.0, 1.0).unwrap();
        assert_relative_eq!(r.expected, PI * PI / 2.0, max_relative = 1e-14);
        assert!(r.residual < 1e-4, "{r:?}");
        assert!((r.measured - r.expected).abs() < 1e-4);
    }

    #[test]
    fn eigencheck_with_cm_motion() {
        let (q, k) = (PI, PI / 2.0);
        let mo = MacroOrbital::single_loop(q, k, SymmetryKind::BosonicEvenCusp).unwrap();
        let grid = OperatorGrid::over_loop(&mo, 1000, 41);
        let r = paired_operator_eigencheck(&mo, &grid, 1.0, 1.0).unwrap();
        // Half of the pair energies ħ²(2q)²/4m + ħ²K²/4m.
        let pair = (2.0 * q).powi(2) / 4.0 + k * k / 4.0;
        assert_relative_eq!(r.expected, pair / 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            r.expected,
            mo.q_energy(1.0, 1.0) + mo.cm_energy(1.0, 1.0),
            max_relative = 1e-14
        );
        assert!(r.residual < 1e-4, "{r:?}");
    }

    #[test]
    fn eigencheck_rejects_coarse_grid() {
        let mo = MacroOrbital::single_loop(PI, 0.0, SymmetryKind::FermionicOdd).unwrap();
        let grid = OperatorGrid::over_loop(&mo, 40, 9);
        assert!(matches!(
            paired_operator_eigencheck(&mo, &grid, 1.0, 1.0),
            Err(Error::UnderResolved(_))
        ));
    }

    #[test]
    fn symmetrized_pair_properties() {
        let a = MacroOrbital::single_loop(PI, PI / 2.0, SymmetryKind::BosonicEvenCusp).unwrap();
        let b = MacroOrbital::single_loop(PI, 3.0 * PI / 2.0, SymmetryKind::BosonicEvenCusp).unwrap();
        let p1 = OrbitalCoords { x: 0.3, cm_x: -0.4 };
        let p2 = OrbitalCoords { x: 0.7, cm_x: 0.25 };

        let sym = two_body_symmetrized_product(a, b, ExchangeSign::Symmetric);
        assert_eq!(sym.permutation_terms().len(), 2);
        assert!((sym.eval(p1, p2) - sym.eval(p2, p1)).norm() < 1e-15);

        let anti = two_body_symmetrized_product(a, b, ExchangeSign::Antisymmetric);
        assert!((anti.eval(p1, p2) + anti.eval(p2, p1)).norm() < 1e-15);
        assert!(anti.eval(p1, p2).norm() > 1e-3);

        let same = two_body_symmetrized_product(a, a, ExchangeSign::Antisymmetric);
        for (x1, x2) in [(0.1, 0.2), (0.5, 0.9), (0.33, 0.66)] {
            let v = same.eval(OrbitalCoords { x: x1, cm_x: x2 }, OrbitalCoords { x: x2, cm_x: -x1 });
            assert!(v.norm() < 1e-15);
        }
    }
}
