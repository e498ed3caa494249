//! Closed-form pair mechanics: momenta, quantized spectrum, waveforms, expectation
//! values, zero-point force, macro-orbitals and the momentum-spectrum comparison.

mod compare;
mod macro_orbital;
mod model;
mod spectrum;
mod waveform;

pub use compare::{macro_orbital_pair, spectrum_compare, MomentumPair, PiOverL, SpectrumComparison, SpectrumScheme};
pub use macro_orbital::{
    paired_operator_eigencheck, two_body_symmetrized_product, EigencheckReport, MacroOrbital, OperatorGrid,
    OrbitalCoords, PermutationTerm, SymmetrizedPair,
};
pub use model::{
    cm_inverse, cm_transform, decompose_momenta, BoxGeometry, CmCoordinates, PairQuantumNumbers, PhysicalUnits,
    WaveNumbers,
};
pub use spectrum::{
    cm_energy_ratio_exact, energy_levels, energy_ratio_exact, epsilon0, hc_validity_check, noninteracting_comparison,
    pair_energy_closed_form, quantized_cm_k, quantized_q, zero_point_force, NonInteractingReport, PairState,
    ZeroPointForce,
};
pub use waveform::{
    cm_waveform_eval, expectation_delta_potential, expectation_phase, expectation_x, pair_plane_wave_state,
    pair_state_factorized, phase_correlation, ExchangeSign, PositionExpectation, RelativeWaveform, SymmetryKind,
};
