//! δ-limit ladder against reference values from an independent solver: a dense
//! symmetric tridiagonal eigensolver on the full grid `[−1, 1]` (4001 points, no
//! parity reduction), one-cell barrier of height `A/Δx` at `x = 0`, reduced units.

use hcpair::analytic::{epsilon0, BoxGeometry, PhysicalUnits};
use hcpair::numeric::{delta_limit_state, delta_limit_study, DeltaStudyConfig, DEFAULT_A_LADDER};

// (A, |η(0)|, ⟨V⟩, E₀). E₀ agrees only to ~1e-8 at large A, where both solvers sit
// at the round-off floor ε·‖H‖.
const REFERENCE: [(f64, f64, f64, f64); 6] = [
    (1e1, 4.360124e-01, 1.901068e+00, 7.041923655837),
    (1e2, 6.088129e-02, 3.706531e-01, 9.486823416635),
    (1e3, 6.264257e-03, 3.924092e-02, 9.830242622349),
    (1e4, 6.281297e-04, 3.945469e-03, 9.865655721202),
    (1e5, 6.282994e-05, 3.947602e-04, 9.869207607987),
    (1e6, 6.283164e-06, 3.947815e-05, 9.869562843827),
];

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn ladder_matches_reference_solver() {
    let g = BoxGeometry::new(2.0).unwrap();
    let u = PhysicalUnits::reduced();
    let rows = delta_limit_study(&DEFAULT_A_LADDER, &g, &u, &DeltaStudyConfig::default()).unwrap();
    for (row, &(a, eta0, v, e0)) in rows.iter().zip(&REFERENCE) {
        assert_eq!(row.strength, a);
        assert!(rel(row.eta0_abs, eta0) < 2e-6, "A={a}: {} vs {eta0}", row.eta0_abs);
        assert!(rel(row.v_expect, v) < 2e-6, "A={a}: {} vs {v}", row.v_expect);
        assert!(rel(row.e0_numeric, e0) < 1e-8, "A={a}: {} vs {e0}", row.e0_numeric);
    }
}

#[test]
fn strongest_barrier_sits_at_twice_epsilon0() {
    let g = BoxGeometry::new(2.0).unwrap();
    let u = PhysicalUnits::reduced();
    let s = delta_limit_state(1e6, &g, &u, &DeltaStudyConfig::default()).unwrap();
    let r = s.row.e0_numeric / (2.0 * epsilon0(&g, &u));
    assert!((0.999..=1.001).contains(&r), "{r}");
    // Jump condition −(ħ²/m)[η'] + Aη(0) = 0 with η'(0⁺) ≈ π/d^(3/2) gives η(0) ≈ 2π/A at d = 1.
    assert!(rel(s.row.eta0_abs * 1e6, 2.0 * std::f64::consts::PI) < 1e-3);
    // The sampled state is even and vanishes at both walls.
    let n = s.eta.len();
    assert_eq!(s.eta[0], 0.0);
    assert_eq!(s.eta[n - 1], 0.0);
    assert!((0..n).all(|i| s.eta[i] == s.eta[n - 1 - i]));
}
