//! Adaptive Simpson quadrature and sampled-data rules.

use crate::num::Real;

/// Absolute tolerance used for unit-scale sinusoidal integrands.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 48;

/// Integrates `f` over `[a, b]` with adaptive Simpson and Richardson correction.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, abs_tol: T) -> T {
    if a == b {
        return T::zero();
    }
    // Seed with a few panels so periodic integrands with a zero whole-interval
    // Simpson estimate are not accepted prematurely.
    let panels = 8usize;
    let h = (b - a) / T::from_count(panels);
    let mut total = T::zero();
    let panel_tol = abs_tol / T::from_count(panels);
    for i in 0..panels {
        let lo = a + h * T::from_count(i);
        let hi = if i + 1 == panels { b } else { lo + h };
        let flo = f(lo);
        let fhi = f(hi);
        let mid = (lo + hi) * T::half();
        let fmid = f(mid);
        let whole = simpson(lo, hi, flo, fmid, fhi);
        total = total + refine(&f, lo, hi, flo, fmid, fhi, whole, panel_tol, MAX_DEPTH);
    }
    total
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let m = (a + b) * T::half();
    let lm = (a + m) * T::half();
    let rm = (m + b) * T::half();
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    refine(f, a, m, fa, flm, fm, left, tol * T::half(), depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol * T::half(), depth - 1)
}

/// Trapezoid rule on uniformly spaced samples.
pub fn trapezoid_uniform<T: Real>(samples: &[T], spacing: T) -> T {
    match samples.len() {
        0 | 1 => T::zero(),
        n => {
            let inner = samples[1..n - 1].iter().fold(T::zero(), |acc, &v| acc + v);
            spacing * (inner + (samples[0] + samples[n - 1]) * T::half())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_squared_over_loops() {
        for s in 1..=4 {
            let b = s as f64 * PI;
            let v = adaptive_simpson(|x: f64| x.sin().powi(2), 0.0, b, 1e-10);
            assert!((v - b / 2.0).abs() < 1e-10, "s={s}: {v}");
        }
    }

    #[test]
    fn polynomial_exact() {
        let v = adaptive_simpson(|x: f64| x * x * x - 2.0 * x, -1.0, 3.0, 1e-12);
        // x^4/4 - x^2 from -1 to 3
        assert!((v - ((81.0 / 4.0 - 9.0) - (0.25 - 1.0))).abs() < 1e-12);
    }

    #[test]
    fn full_period_of_sine_is_zero() {
        let v = adaptive_simpson(|x: f64| (x).sin(), 0.0, 2.0 * PI, 1e-12);
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn trapezoid_on_linear_samples() {
        let xs: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        assert!((trapezoid_uniform(&xs, 0.1) - 0.5).abs() < 1e-14);
        assert_eq!(trapezoid_uniform::<f64>(&[], 0.1), 0.0);
    }

    #[test]
    fn works_in_single_precision() {
        let v = adaptive_simpson(|x: f32| x.cos().powi(2), 0.0, std::f32::consts::PI, 1e-5);
        assert!((v - std::f32::consts::FRAC_PI_2).abs() < 1e-4);
    }
}
