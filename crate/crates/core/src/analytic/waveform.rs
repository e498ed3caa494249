//! Relative and centre-of-mass waveforms, pair plane-wave states and their expectation values.

use num_complex::Complex;

use super::model::{cm_transform, BoxGeometry};
use super::spectrum::quantized_cm_k;
use crate::num::{to_f64, Interval, Real};
use crate::quadrature::{adaptive_simpson, DEFAULT_ABS_TOL};
use crate::{Error, Result};

/// Exchange symmetry of a relative waveform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    /// `ψ⁻ = √2 sin(qx)`, odd under exchange.
    FermionicOdd,
    /// `φ⁺ = √2 sin(q|x|)`, even with a cusp at contact.
    BosonicEvenCusp,
    /// `ψ⁺ = √2 cos(qx)`, the non-interacting even reference.
    EvenCosine,
}

impl SymmetryKind {
    pub fn label(&self) -> &'static str {
        match self {
            SymmetryKind::FermionicOdd => "psi-",
            SymmetryKind::BosonicEvenCusp => "phi+",
            SymmetryKind::EvenCosine => "psi+",
        }
    }

    /// Whether the waveform vanishes at `x = 0`.
    pub fn is_hard_core(&self) -> bool {
        !matches!(self, SymmetryKind::EvenCosine)
    }
}

/// Relative-motion waveform `ζ_q(x)` on a closed domain of separations.
///
/// All three symmetries carry the prefactor `√2`, so `|ψ⁻|² = |φ⁺|²` holds pointwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeWaveform<T> {
    pub symmetry: SymmetryKind,
    pub q: T,
    pub domain: Interval<T>,
}

impl<T: Real> RelativeWaveform<T> {
    pub fn new(symmetry: SymmetryKind, q: T, domain: Interval<T>) -> Self {
        Self { symmetry, q, domain }
    }

    /// Waveform on `[0, λ]`, the confined ground configuration.
    pub fn confined(symmetry: SymmetryKind, q: T) -> Result<Self> {
        if !(q > T::zero()) {
            return Err(Error::invalid("q", format!("must be positive, got {}", to_f64(q))));
        }
        Ok(Self::new(
            symmetry,
            q,
            Interval::new(T::zero(), Self::wavelength_of(q))?,
        ))
    }

    fn wavelength_of(q: T) -> T {
        T::two() * T::PI() / q
    }

    pub fn wavelength(&self) -> T {
        Self::wavelength_of(self.q)
    }

    /// Relative wavevector `k = 2q`.
    pub fn k(&self) -> T {
        self.q + self.q
    }

    pub fn eval(&self, x: T) -> T {
        let s = T::SQRT_2();
        match self.symmetry {
            SymmetryKind::FermionicOdd => s * (self.q * x).sin(),
            SymmetryKind::BosonicEvenCusp => s * (self.q * x.abs()).sin(),
            SymmetryKind::EvenCosine => s * (self.q * x).cos(),
        }
    }

    pub fn density(&self, x: T) -> T {
        let v = self.eval(x);
        v * v
    }

    /// Node positions `sπ/q` inside the domain.
    pub fn nodes(&self) -> Vec<T> {
        let spacing = T::PI() / self.q.abs();
        let offset = match self.symmetry {
            SymmetryKind::EvenCosine => T::half(),
            _ => T::zero(),
        };
        let first = (self.domain.lo / spacing - offset).ceil();
        let mut out = Vec::new();
        let mut s = first;
        loop {
            let x = (s + offset) * spacing;
            if x > self.domain.hi {
                break;
            }
            out.push(x);
            s = s + T::one();
        }
        out
    }

    /// `∫ |ζ|² dx` over `[a, b]` in closed form.
    pub fn norm_sq_closed(&self, a: T, b: T) -> T {
        let q2 = self.q + self.q;
        let osc = ((q2 * b).sin() - (q2 * a).sin()) / q2;
        match self.symmetry {
            SymmetryKind::FermionicOdd => (b - a) - osc,
            SymmetryKind::BosonicEvenCusp => {
                // sin²(q|x|) = sin²(qx)
                (b - a) - osc
            }
            SymmetryKind::EvenCosine => (b - a) + osc,
        }
    }

    /// `∫ x |ζ|² dx` over `[a, b]` in closed form.
    fn first_moment_closed(&self, a: T, b: T) -> T {
        let q2 = self.q + self.q;
        let sign = match self.symmetry {
            SymmetryKind::EvenCosine => T::one(),
            _ => -T::one(),
        };
        // 2·∫ x sin²(qx) = x²/2 - x sin(2qx)/(2q) - cos(2qx)/(4q²); cosine flips the sign of the oscillating part.
        let anti = |x: T| x * x * T::half() + sign * (x * (q2 * x).sin() / q2 + (q2 * x).cos() / (q2 * q2));
        anti(b) - anti(a)
    }
}

/// Mean separation by both routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionExpectation<T> {
    pub closed_form: T,
    pub quadrature: T,
}

/// `⟨x⟩ = ∫ x|ζ|² / ∫ |ζ|²` over the waveform's domain.
pub fn expectation_x<T: Real>(w: &RelativeWaveform<T>) -> Result<PositionExpectation<T>> {
    if !(w.q > T::zero()) {
        return Err(Error::invalid("q", format!("must be positive, got {}", to_f64(w.q))));
    }
    let Interval { lo, hi } = Interval::new(w.domain.lo, w.domain.hi)?;
    let closed_form = w.first_moment_closed(lo, hi) / w.norm_sq_closed(lo, hi);
    let tol = T::lit(DEFAULT_ABS_TOL);
    let num = adaptive_simpson(|x| x * w.density(x), lo, hi, tol);
    let den = adaptive_simpson(|x| w.density(x), lo, hi, tol);
    Ok(PositionExpectation {
        closed_form,
        quadrature: num / den,
    })
}

/// Phase correlation `g(φ) = |ζ(φ/k)|²` with `φ = kx`.
pub fn phase_correlation<T: Real>(w: &RelativeWaveform<T>, phi: T) -> T {
    w.density(phi / w.k())
}

/// `⟨φ⟩ = k⟨x⟩` by quadrature over the phase image `[k·lo, k·hi]` of the domain.
pub fn expectation_phase<T: Real>(w: &RelativeWaveform<T>) -> Result<T> {
    let Interval { lo, hi } = Interval::new(w.domain.lo * w.k(), w.domain.hi * w.k())?;
    let tol = T::lit(DEFAULT_ABS_TOL);
    let num = adaptive_simpson(|p| p * phase_correlation(w, p), lo, hi, tol);
    let den = adaptive_simpson(|p| phase_correlation(w, p), lo, hi, tol);
    Ok(num / den)
}

/// Contact-interaction expectation `⟨Aδ(x)⟩ = |ζ(0)|²`, which is zero for hard-core waveforms.
pub fn expectation_delta_potential<T: Real>(w: &RelativeWaveform<T>) -> Result<T> {
    if !w.symmetry.is_hard_core() {
        return Err(Error::UnsupportedSymmetry(w.symmetry.label()));
    }
    Ok(w.density(T::zero()))
}

/// Centre-of-mass standing wave: `√(2/L) cos(K_N X)` for even `N`, `√(2/L) sin(K_N X)` for odd `N`.
pub fn cm_waveform_eval<T: Real>(cm: u32, cm_x: T, geometry: &BoxGeometry<T>) -> Result<T> {
    let half = geometry.length() * T::half();
    if !(cm_x >= -half && cm_x <= half) {
        return Err(Error::OutOfDomain {
            value: to_f64(cm_x),
            lo: to_f64(-half),
            hi: to_f64(half),
        });
    }
    let k = quantized_cm_k(cm, geometry);
    let amp = (T::two() / geometry.length()).sqrt();
    Ok(if cm % 2 == 1 {
        amp * (k * cm_x).sin()
    } else {
        amp * (k * cm_x).cos()
    })
}

/// Exchange sign of a two-particle state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExchangeSign {
    Symmetric,
    Antisymmetric,
}

impl ExchangeSign {
    pub fn factor<T: Real>(&self) -> T {
        match self {
            ExchangeSign::Symmetric => T::one(),
            ExchangeSign::Antisymmetric => -T::one(),
        }
    }
}

fn plane_wave<T: Real>(k: T, x: T) -> Complex<T> {
    Complex::from_polar(T::one(), k * x)
}

/// Symmetrized product of unit plane waves `[u_k1(x1)u_k2(x2) ± u_k2(x1)u_k1(x2)]/√2`.
pub fn pair_plane_wave_state<T: Real>(k1: T, k2: T, x1: T, x2: T, sign: ExchangeSign) -> Complex<T> {
    let direct = plane_wave(k1, x1) * plane_wave(k2, x2);
    let exchanged = plane_wave(k2, x1) * plane_wave(k1, x2);
    (direct + exchanged * sign.factor::<T>()) * T::FRAC_1_SQRT_2()
}

/// The same state in relative/CM form, `ψ_k(x)^± exp(iKX)`.
///
/// The antisymmetric combination carries a global factor `i` in front of `√2 sin(kx/2)`.
pub fn pair_state_factorized<T: Real>(k1: T, k2: T, x1: T, x2: T, sign: ExchangeSign) -> Complex<T> {
    let c = cm_transform(x1, x2, k1, k2);
    let half_phase = c.k * c.x * T::half();
    let cm_phase = plane_wave(c.cm_k, c.cm_x);
    let relative = match sign {
        ExchangeSign::Symmetric => Complex::new(T::SQRT_2() * half_phase.cos(), T::zero()),
        ExchangeSign::Antisymmetric => Complex::new(T::zero(), T::SQRT_2() * half_phase.sin()),
    };
    relative * cm_phase
}
