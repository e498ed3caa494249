//! Finite-difference relative-motion Hamiltonian `−(ħ²/m)∂²_x + V(x)`.

use super::grid::Grid;
use super::tridiag::SymTridiagonal;
use crate::analytic::PhysicalUnits;
use crate::num::{to_f64, Real};
use crate::quadrature::trapezoid_uniform;
use crate::{Error, Result};

/// Second-difference stencil. `Perturbed` scales the off-diagonal coupling and exists
/// to give the self-test a known-bad operator.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Stencil {
    #[default]
    Central,
    Perturbed {
        off_diagonal_scale: f64,
    },
}

/// How the unknowns map onto grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Unknowns at interior points; both grid ends are Dirichlet walls.
    Dirichlet,
    /// Even sector of a problem symmetric about the first grid point: zero slope at the
    /// first point, Dirichlet wall at the last.
    EvenAboutStart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T> {
    grid: Grid<T>,
    layout: Layout,
    matrix: SymTridiagonal<T>,
    potential: Vec<T>,
}

/// Builds the operator with Dirichlet walls at both grid ends, sampling `potential` at grid points.
pub fn build_hamiltonian<T: Real, F: Fn(T) -> T>(
    grid: &Grid<T>,
    potential: F,
    units: &PhysicalUnits<T>,
) -> Result<Hamiltonian<T>> {
    let samples: Vec<T> = grid.points().map(potential).collect();
    Hamiltonian::from_samples(grid, samples, units, Layout::Dirichlet, Stencil::Central)
}

impl<T: Real> Hamiltonian<T> {
    /// `samples` holds the potential at every grid point (end points included).
    pub fn from_samples(
        grid: &Grid<T>,
        samples: Vec<T>,
        units: &PhysicalUnits<T>,
        layout: Layout,
        stencil: Stencil,
    ) -> Result<Self> {
        if samples.len() != grid.npoints() {
            return Err(Error::invalid(
                "potential",
                format!("{} samples for {} grid points", samples.len(), grid.npoints()),
            ));
        }
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinitePotential {
                x: to_f64(grid.point(i)),
            });
        }
        let h = grid.spacing();
        let c = units.relative_kinetic_coefficient() / (h * h);
        let coupling = match stencil {
            Stencil::Central => -c,
            Stencil::Perturbed { off_diagonal_scale } => -c * T::lit(off_diagonal_scale),
        };
        let n = grid.npoints();
        let (diag, off) = match layout {
            Layout::Dirichlet => {
                let diag: Vec<T> = samples[1..n - 1].iter().map(|&v| c * T::two() + v).collect();
                (diag, vec![coupling; n - 3])
            }
            Layout::EvenAboutStart => {
                let diag: Vec<T> = samples[0..n - 1].iter().map(|&v| c * T::two() + v).collect();
                let mut off = vec![coupling; n - 2];
                // Mirror ghost point folded in and the first row symmetrized.
                off[0] = coupling * T::SQRT_2();
                (diag, off)
            }
        };
        if diag.is_empty() {
            return Err(Error::invalid("npoints", "no interior unknowns"));
        }
        Ok(Self {
            grid: *grid,
            layout,
            matrix: SymTridiagonal::new(diag, off)?,
            potential: samples,
        })
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn matrix(&self) -> &SymTridiagonal<T> {
        &self.matrix
    }

    /// Potential at each grid point.
    pub fn potential(&self) -> &[T] {
        &self.potential
    }

    pub fn unknowns(&self) -> usize {
        self.matrix.dim()
    }

    /// Expands a solver vector to samples on every grid point.
    pub fn to_grid_samples(&self, v: &[T]) -> Vec<T> {
        let mut out = Vec::with_capacity(self.grid.npoints());
        match self.layout {
            Layout::Dirichlet => {
                out.push(T::zero());
                out.extend_from_slice(v);
                out.push(T::zero());
            }
            Layout::EvenAboutStart => {
                out.push(v[0] * T::SQRT_2());
                out.extend_from_slice(&v[1..]);
                out.push(T::zero());
            }
        }
        out
    }
}

/// Lowest eigenpairs sampled on the Hamiltonian's grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult<T> {
    pub eigenvalues: Vec<T>,
    /// Grid samples, `∫|v|²dx = 1` by the trapezoid rule, first lobe positive.
    pub eigenvectors: Vec<Vec<T>>,
    /// `‖Hv − Ev‖ / (‖H‖∞‖v‖)` per pair.
    pub residuals: Vec<T>,
}

/// Eigenvalues only, ascending.
pub fn eigenvalues_lowest<T: Real>(h: &Hamiltonian<T>, count: usize) -> Result<Vec<T>> {
    check_count(h, count)?;
    h.matrix.lowest_eigenvalues(count)
}

fn check_count<T: Real>(h: &Hamiltonian<T>, count: usize) -> Result<()> {
    if count == 0 || count > h.unknowns() {
        return Err(Error::invalid(
            "count",
            format!("must be in 1..={}, got {count}", h.unknowns()),
        ));
    }
    Ok(())
}

pub fn solve_lowest<T: Real>(h: &Hamiltonian<T>, count: usize) -> Result<EigenResult<T>> {
    check_count(h, count)?;
    let values = h.matrix.lowest_eigenvalues(count)?;
    let raw = h.matrix.eigenvectors(&values)?;
    let residuals = values
        .iter()
        .zip(&raw)
        .map(|(&e, v)| h.matrix.relative_residual(e, v))
        .collect();
    let spacing = h.grid.spacing();
    let eigenvectors = raw
        .iter()
        .map(|v| {
            let mut s = h.to_grid_samples(v);
            let sq: Vec<T> = s.iter().map(|&x| x * x).collect();
            let norm = trapezoid_uniform(&sq, spacing).sqrt();
            let peak = s.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
            let first = s
                .iter()
                .copied()
                .find(|x| x.abs() > peak * T::lit(1e-3))
                .unwrap_or(T::one());
            let scale = if first < T::zero() { -norm } else { norm };
            s.iter_mut().for_each(|x| *x = *x / scale);
            s
        })
        .collect();
    Ok(EigenResult {
        eigenvalues: values,
        eigenvectors,
        residuals,
    })
}

/// `∫ weight(x)|v(x)|² dx` by the trapezoid rule on grid samples.
pub fn expectation_numeric<T: Real, F: Fn(T) -> T>(vector: &[T], grid: &Grid<T>, weight: F) -> T {
    let integrand: Vec<T> = grid.points().zip(vector).map(|(x, &v)| weight(x) * v * v).collect();
    trapezoid_uniform(&integrand, grid.spacing())
}

/// Number of sign changes, ignoring samples below `tol·max|v|`.
pub fn count_sign_changes<T: Real>(v: &[T], tol: T) -> usize {
    let peak = v.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    let mut last = T::zero();
    let mut changes = 0;
    for &x in v {
        if x.abs() <= peak * tol {
            continue;
        }
        if last != T::zero() && (x > T::zero()) != (last > T::zero()) {
            changes += 1;
        }
        last = x;
    }
    changes
}

/// Exact eigenvalues of the three-point stencil on a free interval with Dirichlet walls:
/// `(4ħ²/mΔx²)·sin²(sπΔx/2ℓ)`.
pub fn free_stencil_eigenvalue<T: Real>(level: usize, grid: &Grid<T>, units: &PhysicalUnits<T>) -> T {
    let h = grid.spacing();
    let len = grid.x_max() - grid.x_min();
    let s = (T::from_count(level) * T::PI() * h / (T::two() * len)).sin();
    T::lit(4.0) * units.relative_kinetic_coefficient() / (h * h) * s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn units() -> PhysicalUnits<f64> {
        PhysicalUnits::reduced()
    }

    #[test]
    fn free_box_ground_state() {
        let d = 1.0;
        let g = Grid::new(0.0, d, 2000).unwrap();
        let h = build_hamiltonian(&g, |_| 0.0, &units()).unwrap();
        let r = solve_lowest(&h, 3).unwrap();
        for s in 1..=3 {
            let exact = (s as f64 * PI / d).powi(2);
            assert!(((r.eigenvalues[s - 1] - exact) / exact).abs() < 1e-4);
            let stencil = free_stencil_eigenvalue(s, &g, &units());
            assert!(
                ((r.eigenvalues[s - 1] - stencil) / stencil).abs() < 1e-10,
                "{s}: {} vs {stencil}",
                r.eigenvalues[s - 1]
            );
        }
    }

    #[test]
    fn constant_shift() {
        let g = Grid::new(0.0, 1.0, 400).unwrap();
        let a = eigenvalues_lowest(&build_hamiltonian(&g, |_| 0.0, &units()).unwrap(), 4).unwrap();
        let b = eigenvalues_lowest(&build_hamiltonian(&g, |_| 3.5, &units()).unwrap(), 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((y - x - 3.5).abs() < 1e-8);
        }
    }

    #[test]
    fn second_order_refinement() {
        let exact = PI * PI;
        let err = |n: usize| {
            let g = Grid::new(0.0, 1.0, n).unwrap();
            let e = eigenvalues_lowest(&build_hamiltonian(&g, |_| 0.0, &units()).unwrap(), 1).unwrap()[0];
            (e - exact).abs()
        };
        let ratio = err(201) / err(401);
        assert!((ratio - 4.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn vectors_normalized_signed_and_orthogonal() {
        let g = Grid::new(0.0, 2.0, 1001).unwrap();
        let h = build_hamiltonian(&g, |x| 5.0 * (x - 0.7f64).powi(2), &units()).unwrap();
        let r = solve_lowest(&h, 4).unwrap();
        for (i, v) in r.eigenvectors.iter().enumerate() {
            assert!((expectation_numeric(v, &g, |_| 1.0) - 1.0).abs() < 1e-12);
            assert!(r.residuals[i] < 1e-8);
            let first = v.iter().find(|x| x.abs() > 1e-6).unwrap();
            assert!(*first > 0.0);
            assert_eq!(count_sign_changes(v, 1e-9), i);
            for w in &r.eigenvectors[..i] {
                let overlap: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() * g.spacing();
                assert!(overlap.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn even_sector_matches_full_domain_even_states() {
        let d = 1.0;
        let n_half = 301;
        let half = Grid::new(0.0, d, n_half).unwrap();
        let full = Grid::new(-d, d, 2 * n_half - 1).unwrap();
        let pot = |x: f64| 40.0 * (-(x * x) * 30.0).exp();
        let even = Hamiltonian::from_samples(
            &half,
            half.points().map(pot).collect(),
            &units(),
            Layout::EvenAboutStart,
            Stencil::Central,
        )
        .unwrap();
        let whole = build_hamiltonian(&full, pot, &units()).unwrap();
        let e_even = eigenvalues_lowest(&even, 3).unwrap();
        let e_full = eigenvalues_lowest(&whole, 6).unwrap();
        for j in 0..3 {
            assert!((e_even[j] - e_full[2 * j]).abs() < 1e-9 * e_full[2 * j].abs());
        }
        let r = solve_lowest(&even, 1).unwrap();
        assert!(r.residuals[0] < 1e-12);
    }

    #[test]
    fn full_domain_parity() {
        let full = Grid::new(-1.0, 1.0, 801).unwrap();
        let pot = |x: f64| if x.abs() < 0.101 { 25.0 } else { 0.0 };
        let r = solve_lowest(&build_hamiltonian(&full, pot, &units()).unwrap(), 4).unwrap();
        for v in &r.eigenvectors {
            let n = v.len();
            let even = (0..n).all(|i| (v[i] - v[n - 1 - i]).abs() < 1e-6);
            let odd = (0..n).all(|i| (v[i] + v[n - 1 - i]).abs() < 1e-6);
            let dev = (0..n)
                .map(|i| (v[i] - v[n - 1 - i]).abs().min((v[i] + v[n - 1 - i]).abs()))
                .fold(0.0, f64::max);
            assert!(even ^ odd, "{dev}");
        }
    }

    #[test]
    fn errors() {
        let g = Grid::new(0.0, 1.0, 10).unwrap();
        assert!(matches!(
            build_hamiltonian(&g, |x| if x > 0.5 { f64::INFINITY } else { 0.0 }, &units()),
            Err(Error::NonFinitePotential { .. })
        ));
        let h = build_hamiltonian(&g, |_| 0.0, &units()).unwrap();
        assert!(solve_lowest(&h, 0).is_err());
        assert!(solve_lowest(&h, 9).is_err());
        assert!(solve_lowest(&h, 8).is_ok());
    }
}
