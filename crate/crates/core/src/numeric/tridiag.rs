//! Symmetric tridiagonal eigenproblem: Sturm-sequence bisection for eigenvalues and
//! inverse iteration for eigenvectors.

use crate::num::{to_f64, Real};
use crate::{Error, Result};

const MAX_BISECTION_STEPS: usize = 400;
const MAX_INVERSE_STEPS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal<T> {
    diag: Vec<T>,
    off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::invalid(
                "off",
                format!(
                    "need n-1 off-diagonal entries for n = {}, got {}",
                    diag.len(),
                    off.len()
                ),
            ));
        }
        if let Some(v) = diag.iter().chain(off.iter()).find(|v| !v.is_finite()) {
            return Err(Error::invalid("matrix", format!("non-finite entry {}", to_f64(*v))));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn off(&self) -> &[T] {
        &self.off
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc = acc + self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc = acc + self.off[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> T {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s = s + self.off[i - 1].abs();
                }
                if i + 1 < n {
                    s = s + self.off[i].abs();
                }
                s
            })
            .fold(T::zero(), T::max)
    }

    fn gershgorin(&self) -> (T, T) {
        let n = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let mut r = T::zero();
            if i > 0 {
                r = r + self.off[i - 1].abs();
            }
            if i + 1 < n {
                r = r + self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn pivmin(&self) -> T {
        let max_off_sq = self.off.iter().fold(T::one(), |m, &e| m.max(e * e));
        T::min_positive_value() * max_off_sq
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: T) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < T::zero() {
            count += 1;
        }
        for i in 1..self.dim() {
            let e = self.off[i - 1];
            q = self.diag[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Result<Vec<T>> {
        let n = self.dim();
        if count == 0 || count > n {
            return Err(Error::invalid("count", format!("must be in 1..={n}, got {count}")));
        }
        let (g_lo, g_hi) = self.gershgorin();
        let pad = (g_hi - g_lo).abs().max(T::one()) * T::epsilon() * T::lit(4.0);
        let (g_lo, g_hi) = (g_lo - pad, g_hi + pad);
        let eps = T::epsilon();
        let floor = self.pivmin();

        let mut values: Vec<T> = Vec::with_capacity(count);
        for k in 0..count {
            let mut a = values.last().map_or(g_lo, |&prev| prev - pad).max(g_lo);
            let mut b = g_hi;
            let mut converged = false;
            for _ in 0..MAX_BISECTION_STEPS {
                let tol = T::two() * eps * a.abs().max(b.abs()) + floor;
                if b - a <= tol {
                    converged = true;
                    break;
                }
                let mid = (a + b) * T::half();
                if mid <= a || mid >= b {
                    converged = true;
                    break;
                }
                if self.sturm_count(mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            if !converged {
                return Err(Error::NonConvergence(format!(
                    "bisection for eigenvalue {k} did not converge in {MAX_BISECTION_STEPS} steps"
                )));
            }
            values.push((a + b) * T::half());
        }
        Ok(values)
    }

    /// Relative residual `‖Av − λv‖ / (‖A‖∞ ‖v‖)`.
    pub fn relative_residual(&self, value: T, v: &[T]) -> T {
        let av = self.apply(v);
        let r = av
            .iter()
            .zip(v)
            .fold(T::zero(), |acc, (&a, &x)| acc + (a - value * x) * (a - value * x))
            .sqrt();
        let nv = norm2(v);
        r / (self.norm_inf().max(T::min_positive_value()) * nv)
    }

    /// Eigenvectors for the given eigenvalues by inverse iteration. Vectors whose
    /// eigenvalues sit closer than `1e-3·‖A‖` are re-orthogonalized against each other.
    pub fn eigenvectors(&self, values: &[T]) -> Result<Vec<Vec<T>>> {
        let n = self.dim();
        let norm = self.norm_inf().max(T::min_positive_value());
        let cluster_gap = norm * T::lit(1e-3);
        let target = T::lit(1e-8).max(T::epsilon() * T::lit(1e3));
        let mut out: Vec<Vec<T>> = Vec::with_capacity(values.len());
        for (idx, &value) in values.iter().enumerate() {
            let lu = ShiftedLu::factor(self, value, norm);
            let mut v: Vec<T> = (0..n)
                .map(|i| T::one() + T::lit(0.37) * T::from_count((i * 7919 + idx * 104_729) % 1013) / T::lit(1013.0))
                .collect();
            normalize2(&mut v);
            let cluster_start = (0..idx)
                .rev()
                .take_while(|&j| values[j + 1] - values[j] < cluster_gap)
                .last();
            let mut residual = T::infinity();
            for _ in 0..MAX_INVERSE_STEPS {
                lu.solve(&mut v);
                if let Some(start) = cluster_start {
                    for prev in &out[start..idx] {
                        let dot = dot(prev, &v);
                        for (x, &p) in v.iter_mut().zip(prev) {
                            *x = *x - dot * p;
                        }
                    }
                }
                normalize2(&mut v);
                residual = self.relative_residual(value, &v);
                if residual < target {
                    break;
                }
            }
            if !(residual < target) {
                return Err(Error::NonConvergence(format!(
                    "inverse iteration for eigenvalue {} stalled at residual {:e}",
                    to_f64(value),
                    to_f64(residual)
                )));
            }
            out.push(v);
        }
        Ok(out)
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm2<T: Real>(v: &[T]) -> T {
    dot(v, v).sqrt()
}

fn normalize2<T: Real>(v: &mut [T]) {
    let n = norm2(v);
    if n > T::zero() {
        v.iter_mut().for_each(|x| *x = *x / n);
    }
}

/// LU factorization of `A − σI` with partial pivoting.
struct ShiftedLu<T> {
    dl: Vec<T>,
    d: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Real> ShiftedLu<T> {
    fn factor(a: &SymTridiagonal<T>, shift: T, norm: T) -> Self {
        let n = a.dim();
        let mut d: Vec<T> = a.diag.iter().map(|&x| x - shift).collect();
        let mut dl = a.off.clone();
        let mut du = a.off.clone();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let tiny = T::epsilon() * norm;

        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < tiny {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] = d[i + 1] - fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1].abs() < tiny {
            d[n - 1] = tiny;
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [T]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i] - self.dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] = b[i + 1] - self.dl[i] * b[i];
            }
        }
        b[n - 1] = b[n - 1] / self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn chain(n: usize) -> SymTridiagonal<f64> {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn sturm_count_small() {
        let m = SymTridiagonal::new(vec![1.0, 3.0], vec![-1.0]).unwrap();
        assert_eq!(m.sturm_count(0.0), 0);
        assert_eq!(m.sturm_count(1.0), 1);
        assert_eq!(m.sturm_count(4.0), 2);
    }

    #[test]
    fn chain_spectrum() {
        let n = 60;
        let vals = chain(n).lowest_eigenvalues(n).unwrap();
        for (j, v) in vals.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{j}: {v} vs {exact}");
        }
        assert!(vals.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn vectors_are_orthonormal_with_small_residual() {
        let m = chain(200);
        let vals = m.lowest_eigenvalues(5).unwrap();
        let vecs = m.eigenvectors(&vals).unwrap();
        for i in 0..5 {
            assert!((norm2(&vecs[i]) - 1.0).abs() < 1e-12);
            assert!(m.relative_residual(vals[i], &vecs[i]) < 1e-12);
            for j in 0..i {
                assert!(dot(&vecs[i], &vecs[j]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pivoting_path_is_exercised() {
        // Large off-diagonal relative to the shifted diagonal forces row swaps.
        let m = SymTridiagonal::new(vec![0.0, 0.1, -0.2, 0.05, 0.3], vec![5.0, -4.0, 3.0, 2.0]).unwrap();
        let vals = m.lowest_eigenvalues(5).unwrap();
        let vecs = m.eigenvectors(&vals).unwrap();
        for (v, x) in vals.iter().zip(&vecs) {
            assert!(m.relative_residual(*v, x) < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![1.0, f64::NAN], vec![0.0]).is_err());
        assert!(chain(4).lowest_eigenvalues(0).is_err());
        assert!(chain(4).lowest_eigenvalues(5).is_err());
    }
}
