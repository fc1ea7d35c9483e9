//! One-dimensional double-slit interference with a tunable which-path
//! measurement.
//!
//! The crate evaluates the closed-form model (free interference, measurement
//! with precision `σ`, decoherence of the particle, fringe visibility, mutual
//! information between particle and apparatus, and phase dephasing) and the
//! brute-force numerics in [`oracle`] that check it.
//!
//! All quantities are dimensionless: positions in slit widths, time in
//! `mΔ²/ħ`.

// reference constants keep every published digit; `!(x > 0.0)` guards also reject NaN
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod apparatus;
pub mod density;
pub mod dephasing;
pub mod error;
pub mod grid;
pub mod info;
pub mod measurement;
pub mod oracle;
pub mod params;
pub mod qubit;
pub mod registry;
pub mod special;
pub mod wavepacket;

pub use apparatus::{ApparatusMethod, ApparatusOutcome, ClosedFormMethod, QuadratureMethod};
pub use density::{DensityModel, FringeDensity};
pub use error::{Error, Result};
pub use grid::{Grid, SampledDensity, SampledFunction, SampledWave};
pub use measurement::{ConditionalPair, MeasurementModel, VisibilityTime};
pub use params::{ModelParams, Sigma};
pub use qubit::{QubitState, Spectrum};
pub use wavepacket::{GaussianTerm, Wavefunction};

/// Library version, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
