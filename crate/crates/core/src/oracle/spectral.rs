//! Exact free-particle propagation in the discrete Fourier domain.
//!
//! Conventions: forward transform without normalization, inverse scaled by
//! `1/n`; momentum `p_k = 2πk/(n·dx)` for `k < n/2` and `2π(k-n)/(n·dx)` above,
//! so the kernel `e^{-ip²t/2}` sees physically signed momenta.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{domain, Error, Result};
use crate::grid::{Grid, SampledWave};
use crate::params::check_time;

/// Largest tolerated `|ψ|` at either end of a propagation grid.
pub const EDGE_LIMIT: f64 = 1e-12;

/// A grid accepted by [`spectral_propagate`]: power-of-two size, at least 256 points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec(Grid);

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if n < 256 || !n.is_power_of_two() {
            return domain(format!(
                "oracle grid size must be a power of two >= 256, got {n}"
            ));
        }
        Ok(GridSpec(Grid::new(x_min, x_max, n)?))
    }

    /// `x ∈ [-160, 160]`, 8192 points: resolves `L = 5` packets up to `t = 30`.
    pub fn default_oracle() -> Self {
        GridSpec(Grid {
            x_min: -160.0,
            x_max: 160.0,
            n: 8192,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }

    /// Fails unless `|ψ| < EDGE_LIMIT` at both ends.
    pub fn check_edges(&self, psi: &SampledWave) -> Result<()> {
        let first = psi.values.first().map_or(0.0, |v| v.norm());
        let last = psi.values.last().map_or(0.0, |v| v.norm());
        let edge = first.max(last);
        if !(edge < EDGE_LIMIT) {
            return Err(Error::GridTooSmall {
                edge,
                limit: EDGE_LIMIT,
            });
        }
        Ok(())
    }
}

/// Momenta in FFT order for a grid of `n` points spaced `dx`.
pub fn momentum_grid(n: usize, dx: f64) -> Vec<f64> {
    let scale = 2.0 * PI / (n as f64 * dx);
    (0..n)
        .map(|k| {
            let signed = if k < n / 2 {
                k as f64
            } else {
                k as f64 - n as f64
            };
            signed * scale
        })
        .collect()
}

/// Apply `e^{-iP²t/2}` to a sampled wavefunction with one forward and one
/// inverse FFT. The kernel is diagonal in momentum, so there is no splitting error.
pub fn spectral_propagate(psi: &SampledWave, t: f64) -> Result<SampledWave> {
    check_time(t)?;
    let spec = GridSpec::new(psi.grid.x_min, psi.grid.x_max, psi.grid.n)?;
    spec.check_edges(psi)?;
    let n = psi.grid.n;
    if t == 0.0 {
        return Ok(psi.clone());
    }
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(n);
    let inverse = planner.plan_fft_inverse(n);

    let mut buf = psi.values.clone();
    forward.process(&mut buf);
    for (v, p) in buf.iter_mut().zip(momentum_grid(n, psi.grid.dx())) {
        *v *= Complex64::from_polar(1.0, -0.5 * p * p * t);
    }
    inverse.process(&mut buf);
    let inv_n = 1.0 / n as f64;
    for v in &mut buf {
        *v *= inv_n;
    }
    Ok(SampledWave {
        grid: psi.grid,
        values: buf,
    })
}
