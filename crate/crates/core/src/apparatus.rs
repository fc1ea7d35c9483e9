//! Interchangeable ways of obtaining the apparatus state `ρ_A`.

use crate::error::Result;
use crate::measurement::{
    apparatus_state_approx, apparatus_state_exact, approx_eigenvalues, MeasurementModel,
    DEFAULT_QUAD_TOL,
};
use crate::qubit::{QubitState, Spectrum};
use crate::wavepacket::initial_wavefunction;

/// `ρ_A`, its spectrum, and the numerical error when one is available.
#[derive(Debug, Clone, PartialEq)]
pub struct ApparatusOutcome {
    pub state: QubitState,
    pub spectrum: Spectrum,
    pub error_estimate: Option<f64>,
}

/// A strategy for computing the post-measurement apparatus state.
pub trait ApparatusMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn evaluate(&self, model: &MeasurementModel) -> Result<ApparatusOutcome>;
}

/// Adaptive quadrature of `∫ m_i m_j |Ψ|² dx` over the exact initial state.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureMethod {
    pub tol: f64,
}

impl Default for QuadratureMethod {
    fn default() -> Self {
        QuadratureMethod {
            tol: DEFAULT_QUAD_TOL,
        }
    }
}

impl ApparatusMethod for QuadratureMethod {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn evaluate(&self, model: &MeasurementModel) -> Result<ApparatusOutcome> {
        let psi = initial_wavefunction(model.l)?;
        let exact = apparatus_state_exact(&psi, model, self.tol)?;
        Ok(ApparatusOutcome {
            spectrum: exact.state.spectrum(),
            state: exact.state,
            error_estimate: Some(exact.error_estimate),
        })
    }
}

/// Closed form in `β_σ` from the large-L conditional states.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedFormMethod;

impl ApparatusMethod for ClosedFormMethod {
    fn name(&self) -> &'static str {
        "approx"
    }

    fn evaluate(&self, model: &MeasurementModel) -> Result<ApparatusOutcome> {
        Ok(ApparatusOutcome {
            state: apparatus_state_approx(model)?,
            spectrum: approx_eigenvalues(model)?,
            error_estimate: None,
        })
    }
}
