//! Occupation-number dynamics of a harmonic particle coupled to an ohmic
//! bath of oscillators, in bare and dressed coordinates, for a finite
//! cavity (exact normal modes) and for free space (continuum limit).
//!
//! ħ = 1. Frequencies are angular; times are in the reciprocal unit.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bare_dynamics;
pub mod dressed_dynamics;
pub mod error;
pub mod model;
pub mod quadrature;
pub mod spectrum;

pub use bare_dynamics::{OccupationPoint, OccupationSeries};
pub use dressed_dynamics::{ContinuumAmplitudes, DressingMatrix, Prescription};
pub use error::{Error, Result};
pub use model::{CavityConfig, ComplexValue, PhysParams};
pub use quadrature::{QuadratureResult, QuadratureSpec, Truncation};
pub use spectrum::{solve_spectrum, NormalModeBasis, SpectrumMethod};
