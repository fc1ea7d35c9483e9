//! Two-level density matrices over the ordered basis `{|L⟩, |R⟩}` and their spectra.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::oracle::hermitian_2x2_eigenvalues;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;

/// A Hermitian, unit-trace 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    m: [[Complex64; 2]; 2],
}

impl QubitState {
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        if (m[1][0] - m[0][1].conj()).norm() > HERMITIAN_TOL
            || m[0][0].im.abs() > HERMITIAN_TOL
            || m[1][1].im.abs() > HERMITIAN_TOL
        {
            return domain(format!("matrix is not Hermitian: {m:?}"));
        }
        let trace = (m[0][0] + m[1][1]).re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return domain(format!("trace {trace} differs from 1"));
        }
        Ok(QubitState { m })
    }

    /// Real symmetric state `[[ll, lr], [lr, rr]]`.
    pub fn real(ll: f64, lr: f64, rr: f64) -> Result<Self> {
        let c = |v| Complex64::new(v, 0.0);
        QubitState::new([[c(ll), c(lr)], [c(lr), c(rr)]])
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn ll(&self) -> f64 {
        self.m[0][0].re
    }

    pub fn rr(&self) -> f64 {
        self.m[1][1].re
    }

    pub fn lr(&self) -> Complex64 {
        self.m[0][1]
    }

    pub fn trace(&self) -> f64 {
        (self.m[0][0] + self.m[1][1]).re
    }

    pub fn spectrum(&self) -> Spectrum {
        let [hi, lo] =
            hermitian_2x2_eigenvalues(&self.m).expect("QubitState is Hermitian by construction");
        Spectrum::new(vec![hi.clamp(0.0, 1.0), lo.clamp(0.0, 1.0)])
            .expect("eigenvalues of a density matrix form a spectrum")
    }
}

/// Eigenvalues of a density operator: each in `[0, 1]` and summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if let Some(bad) = eigenvalues
            .iter()
            .find(|v| !v.is_finite() || **v < -1e-12 || **v > 1.0 + 1e-12)
        {
            return domain(format!("eigenvalue {bad} outside [0, 1]"));
        }
        let sum: f64 = eigenvalues.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return domain(format!("eigenvalues sum to {sum}, not 1"));
        }
        Ok(Spectrum { eigenvalues })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}
