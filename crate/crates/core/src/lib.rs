//! Two impenetrable hard-core particles in a one-dimensional box.
//!
//! The [`analytic`] module holds the closed-form pair mechanics, [`numeric`] an
//! independent finite-difference eigensolver used as an oracle, [`appendix`] the
//! power-law contact-strength analysis and [`thermal`] the Boltzmann occupation of the
//! pair ladder. [`validation`] strings the invariants together into a self-test.
//!
//! Everything is generic over a [`Real`] scalar; the `*64` aliases fix it to `f64`.

// `!(x > 0)` is used on purpose throughout so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod appendix;
mod error;
pub mod num;
pub mod numeric;
pub mod quadrature;
pub mod thermal;
pub mod validation;

pub use error::{Error, Result};
pub use num::{Interval, Real};

pub type Units64 = analytic::PhysicalUnits<f64>;
pub type Geometry64 = analytic::BoxGeometry<f64>;
pub type PairState64 = analytic::PairState<f64>;
pub type Waveform64 = analytic::RelativeWaveform<f64>;
pub type MacroOrbital64 = analytic::MacroOrbital<f64>;
pub type Grid64 = numeric::Grid<f64>;
pub type DeltaLimitRow64 = numeric::DeltaLimitRow<f64>;
pub type PowerLaw64 = appendix::PowerLawStrength<f64>;
pub type ThermalOccupation64 = thermal::ThermalOccupation<f64>;

pub type Units32 = analytic::PhysicalUnits<f32>;
pub type Geometry32 = analytic::BoxGeometry<f32>;
