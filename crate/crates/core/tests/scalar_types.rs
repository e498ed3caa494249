//! The same code paths at `f32`, plus the exact rational bookkeeping.

use hcpair::analytic::{energy_levels, energy_ratio_exact, spectrum_compare, PairQuantumNumbers, SpectrumScheme};
use hcpair::numeric::{box_spectrum_numeric, CmNodeEnforcement};
use hcpair::thermal::{characteristic_temperature, occupations, Cutoff, OccupationModel};
use hcpair::{Geometry32, Units32};
use num_rational::Ratio;

#[test]
fn single_precision_spectrum() {
    let g = Geometry32::new(2.0).unwrap();
    let u = Units32::reduced();
    let s = energy_levels(PairQuantumNumbers::GROUND, &g, &u);
    assert!((s.ratio_to_epsilon0() - 2.125).abs() < 1e-5);
    let levels = box_spectrum_numeric(&g, &u, 2, 400, CmNodeEnforcement::NodeFilter).unwrap();
    let e0 = energy_levels(PairQuantumNumbers::GROUND, &g, &u).e_rel;
    assert!(((levels[0].e_numeric - e0) / e0).abs() < 1e-3);
}

#[test]
fn single_precision_thermal() {
    let g = Geometry32::new(2.0).unwrap();
    let u = Units32::reduced();
    let t0 = characteristic_temperature(&g, &u);
    let occ = occupations(t0, &g, &u, Cutoff::Auto, OccupationModel::RelativeOnly).unwrap();
    assert!((occ.total() - 1.0).abs() < 1e-6);
    assert!((occ.excited_ratio() / (-6.0f32).exp() - 1.0).abs() < 1e-5);
}

#[test]
fn exact_ratios() {
    for n in 0..6u32 {
        for cm in 0..6u32 {
            let r = energy_ratio_exact(PairQuantumNumbers::new(n, cm));
            let expect = Ratio::new(16 * i64::from(n + 1).pow(2) + i64::from(cm + 1).pow(2), 8);
            assert_eq!(r, expect);
        }
    }
    let c = spectrum_compare(3, 3);
    let ground = c.ground(SpectrumScheme::MacroOrbital).unwrap();
    assert_eq!((ground.k1, ground.k2), (Ratio::new(-3, 2), Ratio::new(5, 2)));
}
