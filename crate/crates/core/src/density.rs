//! Position densities on the detection screen.
//!
//! Every density in the model has the shape
//!
//! ```text
//! P(x,t) = C (1+t²)^{-1/2} e^{-(x²+L²)/(1+t²)} [cosh(2xL/(1+t²)) + κ cos(2txL/(1+t²))]
//! ```
//!
//! and differs only in the prefactor `C` and the coherence factor `κ`
//! (`1` free, `β_σ` after measurement, `e^{-γ²/2}` under dephasing).

use crate::grid::{Grid, SampledDensity};

/// A probability density over screen position, selectable by name in the
/// [`crate::registry::density_registry`].
pub trait DensityModel: Send + Sync {
    fn name(&self) -> &str;

    fn density(&self, x: f64) -> f64;

    fn sample(&self, grid: &Grid) -> SampledDensity {
        grid.sample(|x| self.density(x))
    }
}

/// `C·Γ`-weighted cosh envelope plus a `κ`-damped fringe term.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeDensity {
    name: &'static str,
    l: f64,
    t: f64,
    /// ln(C / √(1+t²))
    log_prefactor: f64,
    coherence: f64,
}

impl FringeDensity {
    pub(crate) fn new(name: &'static str, l: f64, t: f64, prefactor: f64, coherence: f64) -> Self {
        let s2 = 1.0 + t * t;
        FringeDensity {
            name,
            l,
            t,
            log_prefactor: prefactor.ln() - 0.5 * s2.ln(),
            coherence,
        }
    }

    pub fn separation(&self) -> f64 {
        self.l
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// The factor multiplying the interference term.
    pub fn coherence(&self) -> f64 {
        self.coherence
    }

    /// `Γ·cosh(...)`, evaluated as `½[e^{a₊} + e^{a₋}]` so that neither factor overflows.
    pub fn envelope(&self, x: f64) -> f64 {
        let s2 = 1.0 + self.t * self.t;
        let left = self.log_prefactor - (x + self.l) * (x + self.l) / s2;
        let right = self.log_prefactor - (x - self.l) * (x - self.l) / s2;
        0.5 * (left.exp() + right.exp())
    }

    /// `Γ·cos(...)`, without the coherence factor.
    pub fn fringe(&self, x: f64) -> f64 {
        let s2 = 1.0 + self.t * self.t;
        let gamma = (self.log_prefactor - (x * x + self.l * self.l) / s2).exp();
        gamma * (2.0 * self.t * x * self.l / s2).cos()
    }

    /// Second derivative of the density at the origin, in closed form.
    pub(crate) fn curvature_at_origin(&self) -> f64 {
        let s2 = 1.0 + self.t * self.t;
        let g0 = (self.log_prefactor - self.l * self.l / s2).exp();
        let a = 2.0 * self.l / s2;
        let b = 2.0 * self.t * self.l / s2;
        g0 * (-2.0 * (1.0 + self.coherence) / s2 + a * a - self.coherence * b * b)
    }
}

impl DensityModel for FringeDensity {
    fn name(&self) -> &str {
        self.name
    }

    fn density(&self, x: f64) -> f64 {
        // rounding can push the sum a hair below zero at exact fringe zeros
        (self.envelope(x) + self.coherence * self.fringe(x)).max(0.0)
    }
}
