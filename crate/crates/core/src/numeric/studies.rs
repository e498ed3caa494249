//! Numeric studies: the δ-barrier limiting process on `[−d, d]`, the quantized box
//! spectrum with a node at the midpoint, and grid-convergence measurements.

use rayon::prelude::*;

use super::grid::{Grid, RegularizedDelta};
use super::hamiltonian::{eigenvalues_lowest, solve_lowest, Hamiltonian, Layout, Stencil};
use crate::analytic::{quantized_q, BoxGeometry, PhysicalUnits};
use crate::num::{to_f64, Real};
use crate::quadrature::trapezoid_uniform;
use crate::{Error, Result};

/// Default grid size.
pub const DEFAULT_NPOINTS: usize = 4000;

/// Default strength ladder in reduced units.
pub const DEFAULT_A_LADDER: [f64; 6] = [1e1, 1e2, 1e3, 1e4, 1e5, 1e6];

/// Barrier width specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BarrierWidth<T> {
    /// Multiple of the grid spacing.
    Cells(T),
    Absolute(T),
}

impl<T: Real> Default for BarrierWidth<T> {
    fn default() -> Self {
        BarrierWidth::Cells(T::one())
    }
}

impl<T: Real> BarrierWidth<T> {
    fn resolve(&self, spacing: T) -> Result<T> {
        let w = match *self {
            BarrierWidth::Cells(c) => c * spacing,
            BarrierWidth::Absolute(w) => w,
        };
        // Allow rounding slack when the width is given as exactly one cell.
        if !(w.is_finite()) || w < spacing * (T::one() - T::lit(1e-9)) {
            return Err(Error::UnderResolved(format!(
                "barrier width {:e} is below one grid spacing {:e}",
                to_f64(w),
                to_f64(spacing)
            )));
        }
        Ok(w)
    }
}

/// Settings shared by the δ-limit study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaStudyConfig<T> {
    pub npoints: usize,
    pub width: BarrierWidth<T>,
    pub stencil: Stencil,
}

impl<T: Real> Default for DeltaStudyConfig<T> {
    fn default() -> Self {
        Self {
            npoints: DEFAULT_NPOINTS,
            width: BarrierWidth::default(),
            stencil: Stencil::Central,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaLimitRow<T> {
    pub strength: T,
    /// `|η(0)|` of the unit-normalized even ground state on `[−d, d]`.
    pub eta0_abs: T,
    /// `‖η − φ⁺‖₂` against the normalized `sin(q₀|x|)`, `q₀ = π/d`.
    pub l2_dist_to_phi_plus: T,
    /// `∫ V|η|² dx`.
    pub v_expect: T,
    pub e0_numeric: T,
}

/// Even ground state on the full symmetric grid together with its summary row.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaLimitState<T> {
    pub grid: Grid<T>,
    pub eta: Vec<T>,
    pub potential: Vec<T>,
    pub row: DeltaLimitRow<T>,
    pub residual: T,
}

fn symmetric_half_grid<T: Real>(geometry: &BoxGeometry<T>, npoints: usize) -> Result<Grid<T>> {
    if npoints < 5 {
        return Err(Error::invalid(
            "npoints",
            format!("need at least 5 points, got {npoints}"),
        ));
    }
    // Full symmetric grid has an odd point count so x = 0 is a node of the grid.
    Grid::new(T::zero(), geometry.half_length(), npoints / 2 + 1)
}

/// Lowest even-symmetry state of `−(ħ²/m)∂²_x + A·δ_w(x)` on `[−d, d]` with walls at `±d`.
pub fn delta_limit_state<T: Real>(
    strength: T,
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    config: &DeltaStudyConfig<T>,
) -> Result<DeltaLimitState<T>> {
    let half = symmetric_half_grid(geometry, config.npoints)?;
    let h = half.spacing();
    let width = config.width.resolve(h)?;
    let barrier = RegularizedDelta::new(strength, width, T::zero())?;
    let samples = barrier.cell_averaged(&half);
    let ham = Hamiltonian::from_samples(&half, samples.clone(), units, Layout::EvenAboutStart, config.stencil)?;
    let sol = solve_lowest(&ham, 1)?;
    // Half-grid samples are unit-normalized over [0, d]; the mirrored state carries 1/√2.
    let half_state: Vec<T> = sol.eigenvectors[0].iter().map(|&v| v * T::FRAC_1_SQRT_2()).collect();

    let d = geometry.half_length();
    let q0 = quantized_q(0, geometry);
    let phi_norm = d.sqrt().recip();
    let dist_sq: Vec<T> = half
        .points()
        .zip(&half_state)
        .map(|(x, &e)| {
            let r = e - phi_norm * (q0 * x).sin();
            r * r
        })
        .collect();
    let v_weighted: Vec<T> = samples.iter().zip(&half_state).map(|(&v, &e)| v * e * e).collect();
    let row = DeltaLimitRow {
        strength,
        eta0_abs: half_state[0].abs(),
        l2_dist_to_phi_plus: (T::two() * trapezoid_uniform(&dist_sq, h)).sqrt(),
        v_expect: T::two() * trapezoid_uniform(&v_weighted, h),
        e0_numeric: sol.eigenvalues[0],
    };

    let n_half = half.npoints();
    let full = Grid::new(-d, d, 2 * n_half - 1)?;
    let mirror = |src: &[T]| -> Vec<T> { src[1..].iter().rev().chain(src.iter()).copied().collect() };
    Ok(DeltaLimitState {
        grid: full,
        eta: mirror(&half_state),
        potential: mirror(&samples),
        row,
        residual: sol.residuals[0],
    })
}

/// One row per strength on an ascending ladder; strengths are solved in parallel and
/// returned in ladder order.
pub fn delta_limit_study<T: Real>(
    ladder: &[T],
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    config: &DeltaStudyConfig<T>,
) -> Result<Vec<DeltaLimitRow<T>>> {
    if ladder.is_empty() {
        return Err(Error::invalid("A_ladder", "empty ladder"));
    }
    if let Some(a) = ladder.iter().find(|a| !(**a >= T::zero() && a.is_finite())) {
        return Err(Error::invalid(
            "A_ladder",
            format!("strengths must be finite and non-negative, got {}", to_f64(*a)),
        ));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("A_ladder", "strengths must be strictly ascending"));
    }
    ladder
        .par_iter()
        .map(|&a| delta_limit_state(a, geometry, units, config).map(|s| s.row))
        .collect()
}

/// How the centre-of-mass node at the box midpoint is enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CmNodeEnforcement<T> {
    /// Keep the Dirichlet states on `[0, L]` that change sign across the midpoint.
    NodeFilter,
    /// Place a one-cell barrier of this strength at the midpoint and keep the upper
    /// member of each nearly degenerate pair (eigenvalues only).
    Barrier { strength: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxLevel<T> {
    pub n: u32,
    /// 1-based index `s` of the state among all `[0, L]` Dirichlet states (`None` for the barrier route).
    pub dirichlet_level: Option<usize>,
    pub q_numeric: T,
    pub e_numeric: T,
}

/// Whether a sampled state on a uniform grid is antisymmetric about the grid centre.
pub fn has_midpoint_node<T: Real>(v: &[T]) -> bool {
    let n = v.len();
    let overlap = (0..n / 2).fold(T::zero(), |acc, i| acc + v[i] * v[n - 1 - i]);
    overlap < T::zero()
}

/// Relative-motion levels on `[0, L]` whose state has a node at `x = L/2`.
pub fn box_spectrum_numeric<T: Real>(
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    n_levels: usize,
    npoints: usize,
    enforcement: CmNodeEnforcement<T>,
) -> Result<Vec<BoxLevel<T>>> {
    box_spectrum_with_stencil(geometry, units, n_levels, npoints, enforcement, Stencil::Central)
}

/// [`box_spectrum_numeric`] with an explicit stencil.
pub fn box_spectrum_with_stencil<T: Real>(
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    n_levels: usize,
    npoints: usize,
    enforcement: CmNodeEnforcement<T>,
    stencil: Stencil,
) -> Result<Vec<BoxLevel<T>>> {
    if n_levels == 0 {
        return Err(Error::invalid("n_levels", "need at least one level"));
    }
    let l = geometry.length();
    let to_q = |e: T| (e * units.mass()).max(T::zero()).sqrt() / units.hbar();
    match enforcement {
        CmNodeEnforcement::NodeFilter => {
            let grid = Grid::new(T::zero(), l, npoints)?;
            let ham = Hamiltonian::from_samples(&grid, vec![T::zero(); npoints], units, Layout::Dirichlet, stencil)?;
            let sol = solve_lowest(&ham, 2 * n_levels)?;
            let levels = sol
                .eigenvectors
                .iter()
                .zip(&sol.eigenvalues)
                .enumerate()
                .filter(|(_, (v, _))| has_midpoint_node(v))
                .enumerate()
                .map(|(n, (j, (_, &e)))| BoxLevel {
                    n: n as u32,
                    dirichlet_level: Some(j + 1),
                    q_numeric: to_q(e),
                    e_numeric: e,
                })
                .take(n_levels)
                .collect::<Vec<_>>();
            if levels.len() < n_levels {
                return Err(Error::NonConvergence(format!(
                    "found {} midpoint-node states among the lowest {}",
                    levels.len(),
                    2 * n_levels
                )));
            }
            Ok(levels)
        }
        CmNodeEnforcement::Barrier { strength } => {
            let npoints = npoints | 1;
            let grid = Grid::new(T::zero(), l, npoints)?;
            let barrier = RegularizedDelta::new(strength, grid.spacing(), l * T::half())?;
            let ham =
                Hamiltonian::from_samples(&grid, barrier.cell_averaged(&grid), units, Layout::Dirichlet, stencil)?;
            let values = eigenvalues_lowest(&ham, 2 * n_levels)?;
            Ok(values
                .chunks(2)
                .enumerate()
                .map(|(n, pair)| BoxLevel {
                    n: n as u32,
                    dirichlet_level: None,
                    q_numeric: to_q(pair[1]),
                    e_numeric: pair[1],
                })
                .collect())
        }
    }
}

/// Grid-refinement record for one eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy<T> {
    pub spacings: Vec<T>,
    pub values: Vec<T>,
    pub errors: Vec<T>,
    /// `log(e_i/e_{i+1}) / log(h_i/h_{i+1})` for successive grids.
    pub observed_orders: Vec<T>,
    /// Three-grid Richardson estimate from the finest three grids (no exact value used).
    pub richardson_order: Option<T>,
}

/// Refines the `[0, L]` Dirichlet grid by halving the spacing and tracks the lowest
/// midpoint-node level against its exact value `ħ²q₀²/m`.
pub fn ground_level_convergence<T: Real>(
    geometry: &BoxGeometry<T>,
    units: &PhysicalUnits<T>,
    coarse_intervals: usize,
    refinements: usize,
) -> Result<ConvergenceStudy<T>> {
    if coarse_intervals < 4 || refinements == 0 {
        return Err(Error::invalid(
            "refinements",
            "need at least 4 intervals and one refinement",
        ));
    }
    let q0 = quantized_q(0, geometry);
    let exact = units.relative_kinetic_coefficient() * q0 * q0;
    let mut spacings = Vec::new();
    let mut values = Vec::new();
    for r in 0..=refinements {
        let intervals = coarse_intervals << r;
        let grid = Grid::new(T::zero(), geometry.length(), intervals + 1)?;
        let ham = Hamiltonian::from_samples(
            &grid,
            vec![T::zero(); intervals + 1],
            units,
            Layout::Dirichlet,
            Stencil::Central,
        )?;
        // Second Dirichlet level carries the midpoint node.
        let vals = eigenvalues_lowest(&ham, 2)?;
        spacings.push(grid.spacing());
        values.push(vals[1]);
    }
    let errors: Vec<T> = values.iter().map(|&v| ((v - exact) / exact).abs()).collect();
    let observed_orders = errors
        .windows(2)
        .zip(spacings.windows(2))
        .map(|(e, h)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect();
    let richardson_order = (values.len() >= 3).then(|| {
        let n = values.len();
        let (f1, f2, f3) = (values[n - 3], values[n - 2], values[n - 1]);
        ((f1 - f2) / (f2 - f3)).abs().ln() / (spacings[n - 3] / spacings[n - 2]).ln()
    });
    Ok(ConvergenceStudy {
        spacings,
        values,
        errors,
        observed_orders,
        richardson_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{energy_levels, epsilon0, PairQuantumNumbers};
    use crate::numeric::hamiltonian::{count_sign_changes, expectation_numeric};

    fn setup() -> (BoxGeometry<f64>, PhysicalUnits<f64>) {
        (BoxGeometry::new(2.0).unwrap(), PhysicalUnits::reduced())
    }

    #[test]
    fn zero_strength_gives_cosine_reference() {
        let (g, u) = setup();
        let s = delta_limit_state(0.0, &g, &u, &DeltaStudyConfig::default()).unwrap();
        let peak = s.eta.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        assert_eq!(s.row.eta0_abs, peak);
        // cos(πx/2d)/√d, E = (π/2d)².
        assert!((s.row.eta0_abs - 1.0).abs() < 1e-5);
        assert!((s.row.e0_numeric - (std::f64::consts::PI / 2.0).powi(2)).abs() < 1e-4);
        assert_eq!(s.row.v_expect, 0.0);
    }

    #[test]
    fn strong_barrier_reaches_cusp_form() {
        let (g, u) = setup();
        let s = delta_limit_state(1e6, &g, &u, &DeltaStudyConfig::default()).unwrap();
        assert!(s.row.l2_dist_to_phi_plus < 1e-3, "{:?}", s.row);
        let two_eps = 2.0 * epsilon0(&g, &u);
        assert!((s.row.e0_numeric / two_eps - 1.0).abs() < 1e-3);
        assert!(s.residual < 1e-8);
        // Mean separation after folding x < 0 onto [d, 2d].
        let d = g.half_length();
        let mean = expectation_numeric(&s.eta, &s.grid, |x| if x < 0.0 { x + 2.0 * d } else { x });
        assert!((mean - d).abs() < 1e-3);
        let v = expectation_numeric(&s.eta, &s.grid, |_| 1.0);
        assert!((v - 1.0).abs() < 1e-12);
        let n = s.potential.len();
        let v_direct: f64 = (0..n).map(|i| s.potential[i] * s.eta[i] * s.eta[i]).sum::<f64>() * s.grid.spacing();
        assert!((v_direct - s.row.v_expect).abs() <= 1e-12 * s.row.v_expect.max(1e-300) + 1e-18);
    }

    #[test]
    fn ladder_is_monotone_and_v_decays_inversely() {
        let (g, u) = setup();
        let cfg = DeltaStudyConfig {
            npoints: 2000,
            ..Default::default()
        };
        let rows = delta_limit_study(&DEFAULT_A_LADDER, &g, &u, &cfg).unwrap();
        assert!(rows.windows(2).all(|w| w[1].eta0_abs < w[0].eta0_abs));
        assert!(rows
            .windows(2)
            .all(|w| w[1].l2_dist_to_phi_plus < w[0].l2_dist_to_phi_plus));
        let ratio = rows[3].v_expect / rows[4].v_expect;
        assert!((ratio - 10.0).abs() < 0.5, "{ratio}");
    }

    #[test]
    fn ladder_validation() {
        let (g, u) = setup();
        let cfg = DeltaStudyConfig::default();
        assert!(delta_limit_study(&[10.0, 1.0], &g, &u, &cfg).is_err());
        assert!(delta_limit_study(&[-1.0, 1.0], &g, &u, &cfg).is_err());
        assert!(delta_limit_study::<f64>(&[], &g, &u, &cfg).is_err());
        let narrow = DeltaStudyConfig {
            width: BarrierWidth::Cells(0.5),
            ..cfg
        };
        assert!(matches!(
            delta_limit_study(&[1.0], &g, &u, &narrow),
            Err(Error::UnderResolved(_))
        ));
    }

    #[test]
    fn node_filter_selects_even_dirichlet_levels() {
        let (g, u) = setup();
        let levels = box_spectrum_numeric(&g, &u, 4, 4000, CmNodeEnforcement::NodeFilter).unwrap();
        for lvl in &levels {
            assert_eq!(lvl.dirichlet_level, Some(2 * (lvl.n as usize + 1)));
            let exact = quantized_q(lvl.n, &g);
            assert!(((lvl.q_numeric - exact) / exact).abs() < 1e-3);
            let e_k = energy_levels(PairQuantumNumbers::new(lvl.n, 0), &g, &u).e_rel;
            assert!(((lvl.e_numeric - e_k) / e_k).abs() < 1e-3);
        }
    }

    #[test]
    fn states_without_midpoint_node_are_odd_levels() {
        let (g, u) = setup();
        let grid = Grid::new(0.0, g.length(), 1000).unwrap();
        let ham = Hamiltonian::from_samples(&grid, vec![0.0; 1000], &u, Layout::Dirichlet, Stencil::Central).unwrap();
        let sol = solve_lowest(&ham, 8).unwrap();
        for (j, v) in sol.eigenvectors.iter().enumerate() {
            assert_eq!(count_sign_changes(v, 1e-9), j);
            assert_eq!(has_midpoint_node(v), (j + 1) % 2 == 0);
        }
    }

    #[test]
    fn barrier_route_agrees_with_node_filter() {
        let (g, u) = setup();
        let a = box_spectrum_numeric(&g, &u, 3, 2001, CmNodeEnforcement::NodeFilter).unwrap();
        let b = box_spectrum_numeric(&g, &u, 3, 2001, CmNodeEnforcement::Barrier { strength: 1e9 }).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(((x.e_numeric - y.e_numeric) / x.e_numeric).abs() < 1e-9);
        }
    }

    #[test]
    fn convergence_is_second_order() {
        let (g, u) = setup();
        let c = ground_level_convergence(&g, &u, 250, 3).unwrap();
        for p in &c.observed_orders {
            assert!((p - 2.0).abs() < 0.05, "{c:?}");
        }
        assert!((c.richardson_order.unwrap() - 2.0).abs() < 0.05);
    }
}
