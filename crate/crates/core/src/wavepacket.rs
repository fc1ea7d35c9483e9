//! Closed-form double-slit state: two Gaussian packets at `±L` and their free evolution.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::density::FringeDensity;
use crate::error::{Error, Result};
use crate::grid::{Grid, SampledWave};
use crate::params::{check_separation, check_time};

/// `coeff · exp(-(x - center)² / (2·width))` with complex `width`, `Re(width) > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    pub coeff: Complex64,
    pub center: f64,
    pub width: Complex64,
}

impl GaussianTerm {
    pub fn new(coeff: Complex64, center: f64, width: Complex64) -> Result<Self> {
        if !(width.re > 0.0) || !width.im.is_finite() {
            return Err(Error::Domain(format!(
                "Gaussian width must have positive real part, got {width}"
            )));
        }
        Ok(GaussianTerm {
            coeff,
            center,
            width,
        })
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let d = x - self.center;
        self.coeff * (-(d * d) / (2.0 * self.width)).exp()
    }
}

/// A wavefunction written as a finite sum of Gaussian terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Wavefunction {
    pub terms: Vec<GaussianTerm>,
}

impl Wavefunction {
    pub fn new(terms: Vec<GaussianTerm>) -> Self {
        Wavefunction { terms }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms.iter().map(|g| g.eval(x)).sum()
    }

    pub fn density(&self, x: f64) -> f64 {
        self.eval(x).norm_sqr()
    }

    pub fn sample(&self, grid: &Grid) -> SampledWave {
        grid.sample(|x| self.eval(x))
    }

    /// Exact ∫|ψ|² dx from pairwise Gaussian overlap integrals.
    pub fn norm_sqr(&self) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for a in &self.terms {
            for b in &self.terms {
                total += gaussian_overlap(a, b);
            }
        }
        total.re
    }
}

/// ∫ conj(a(x)) b(x) dx for two Gaussian terms.
fn gaussian_overlap(a: &GaussianTerm, b: &GaussianTerm) -> Complex64 {
    // conj(a) has width conj(w_a); exponent -(x-ca)²/(2 conj wa) - (x-cb)²/(2 wb)
    let pa = 1.0 / (2.0 * a.width.conj());
    let pb = 1.0 / (2.0 * b.width);
    let p = pa + pb;
    let q = pa * a.center + pb * b.center;
    let r = pa * a.center * a.center + pb * b.center * b.center;
    a.coeff.conj() * b.coeff * (PI / p).sqrt() * (q * q / p - r).exp()
}

/// Normalization `A = [2√π (1 + e^{-L²})]^{-1/2}` of the two-packet state.
pub fn normalization_a(l: f64) -> Result<f64> {
    check_separation(l)?;
    Ok(norm_a_unchecked(l))
}

pub(crate) fn norm_a_unchecked(l: f64) -> f64 {
    (2.0 * PI.sqrt() * (1.0 + (-l * l).exp())).sqrt().recip()
}

/// `Ψ(x) = A[e^{-(x+L)²/2} + e^{-(x-L)²/2}]`, left packet first.
pub fn initial_wavefunction(l: f64) -> Result<Wavefunction> {
    let a = Complex64::new(normalization_a(l)?, 0.0);
    let one = Complex64::new(1.0, 0.0);
    Ok(Wavefunction::new(vec![
        GaussianTerm::new(a, -l, one)?,
        GaussianTerm::new(a, l, one)?,
    ]))
}

/// Free evolution of unit-width Gaussian terms: width `1 → 1 + it` and
/// coefficient `c → c / √(1 + it)` (principal branch).
///
/// Only unit-width input is accepted; arbitrary states go through
/// [`crate::oracle::spectral_propagate`].
pub fn free_evolve(wave: &Wavefunction, t: f64) -> Result<Wavefunction> {
    check_time(t)?;
    let width = Complex64::new(1.0, t);
    let scale = width.sqrt().inv();
    let terms = wave
        .terms
        .iter()
        .map(|g| {
            if g.width != Complex64::new(1.0, 0.0) {
                return Err(Error::UnsupportedInput(format!(
                    "closed-form evolution needs unit initial width, got {}",
                    g.width
                )));
            }
            Ok(GaussianTerm {
                coeff: g.coeff * scale,
                center: g.center,
                width,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Wavefunction::new(terms))
}

/// `Γ^{xt} = 2A² (1+t²)^{-1/2} exp[(-x² - L²)/(1+t²)]`.
pub fn gamma_factor(x: f64, t: f64, l: f64) -> f64 {
    let a = norm_a_unchecked(l);
    let s2 = 1.0 + t * t;
    2.0 * a * a / s2.sqrt() * ((-x * x - l * l) / s2).exp()
}

/// Free two-slit density `P(x,t) = Γ^{xt}[cosh(2xL/(1+t²)) + cos(2txL/(1+t²))]`.
pub fn free_density(l: f64, t: f64) -> Result<FringeDensity> {
    check_separation(l)?;
    check_time(t)?;
    let a = norm_a_unchecked(l);
    Ok(FringeDensity::new("free", l, t, 2.0 * a * a, 1.0))
}
