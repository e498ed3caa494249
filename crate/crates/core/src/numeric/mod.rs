//! Finite-difference oracle for the relative-motion problem.

mod grid;
mod hamiltonian;
mod studies;
mod tridiag;

pub use grid::{Grid, RegularizedDelta};
pub use hamiltonian::{
    build_hamiltonian, count_sign_changes, eigenvalues_lowest, expectation_numeric, free_stencil_eigenvalue,
    solve_lowest, EigenResult, Hamiltonian, Layout, Stencil,
};
pub use studies::{
    box_spectrum_numeric, box_spectrum_with_stencil, delta_limit_state, delta_limit_study, ground_level_convergence,
    has_midpoint_node, BarrierWidth, BoxLevel, CmNodeEnforcement, ConvergenceStudy, DeltaLimitRow, DeltaLimitState,
    DeltaStudyConfig, DEFAULT_A_LADDER, DEFAULT_NPOINTS,
};
pub use tridiag::SymTridiagonal;
