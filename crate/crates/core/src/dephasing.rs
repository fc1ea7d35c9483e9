//! Interference loss from a random relative phase between the two packets.
//!
//! A trial with phase `φ` on the left packet starts from
//! `A_φ [e^{iφ} e^{-(x+L)²/2} + e^{-(x-L)²/2}]`. After free flight the packets are
//! `g_∓(x,t) = (1+it)^{-1/2} exp(-(x±L)²/(2(1+it)))` and
//!
//! ```text
//! g₋ conj(g₊) = (1+t²)^{-1/2} exp(-(x²+L²)/(1+t²)) · exp(i·2txL/(1+t²))
//! ```
//!
//! so the cross term `2 Re[e^{iφ} g₋ conj(g₊)]` is `2Γ cos(2txL/(1+t²) + φ)`: the
//! phase adds directly to the fringe argument, and `φ = π` puts a minimum at the
//! origin. Averaging over `φ ~ N(0, γ²)` multiplies the cosine by `e^{-γ²/2}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::density::{DensityModel, FringeDensity};
use crate::error::{domain, Error, Result};
use crate::grid::{Grid, SampledDensity};
use crate::measurement::APPROX_MIN_L;
use crate::params::{check_separation, check_time};
use crate::wavepacket::{free_evolve, norm_a_unchecked, GaussianTerm, Wavefunction};

/// Gaussian phase distribution (mean 0, width `gamma`) sampled `samples` times from `seed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEnsemble {
    pub gamma: f64,
    pub samples: usize,
    pub seed: u64,
}

impl PhaseEnsemble {
    pub fn new(gamma: f64, samples: usize, seed: u64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return domain(format!("gamma must be finite and >= 0, got {gamma}"));
        }
        if samples == 0 {
            return domain("ensemble needs at least one sample");
        }
        Ok(PhaseEnsemble {
            gamma,
            samples,
            seed,
        })
    }

    /// Phases from ChaCha8 via the Box–Muller transform (no rejection step),
    /// so a seed fixes the sequence on every platform.
    pub fn phases(&self) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::with_capacity(self.samples + 1);
        while out.len() < self.samples {
            let u1: f64 = 1.0 - rng.gen::<f64>();
            let u2: f64 = rng.gen::<f64>();
            let r = (-2.0 * u1.ln()).sqrt();
            let (s, c) = (2.0 * PI * u2).sin_cos();
            out.push(self.gamma * r * c);
            out.push(self.gamma * r * s);
        }
        out.truncate(self.samples);
        out
    }
}

fn require_large_l(l: f64) -> Result<()> {
    check_separation(l)?;
    if l < APPROX_MIN_L {
        return Err(Error::ApproximationDomain {
            min: APPROX_MIN_L,
            got: l,
        });
    }
    Ok(())
}

/// `⟨P⟩ = Γ^{xt}[cosh(2xL/(1+t²)) + e^{-γ²/2} cos(2xLt/(1+t²))]`.
pub fn dephased_density_analytic(l: f64, gamma: f64, t: f64) -> Result<FringeDensity> {
    require_large_l(l)?;
    check_time(t)?;
    if gamma.is_nan() || gamma < 0.0 {
        return domain(format!("gamma must be >= 0, got {gamma}"));
    }
    let a = norm_a_unchecked(l);
    Ok(FringeDensity::new(
        "dephased",
        l,
        t,
        2.0 * a * a,
        (-0.5 * gamma * gamma).exp(),
    ))
}

/// `[2√π(1 + e^{-L²} cos φ)]^{-1/2}`, the normalization of a phase-shifted superposition.
fn phased_normalization(l: f64, phi: f64) -> f64 {
    (2.0 * PI.sqrt() * (1.0 + (-l * l).exp() * phi.cos()))
        .sqrt()
        .recip()
}

/// Density of one trial with relative phase `phi`, evaluated from the evolved wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleTrialDensity {
    wave: Wavefunction,
}

impl SingleTrialDensity {
    pub fn wavefunction(&self) -> &Wavefunction {
        &self.wave
    }
}

impl DensityModel for SingleTrialDensity {
    fn name(&self) -> &str {
        "single-trial"
    }

    fn density(&self, x: f64) -> f64 {
        self.wave.density(x)
    }
}

pub fn single_trial_density(l: f64, phi: f64, t: f64) -> Result<SingleTrialDensity> {
    require_large_l(l)?;
    check_time(t)?;
    if !phi.is_finite() {
        return domain(format!("phase must be finite, got {phi}"));
    }
    let a = phased_normalization(l, phi);
    let one = Complex64::new(1.0, 0.0);
    let initial = Wavefunction::new(vec![
        GaussianTerm::new(Complex64::from_polar(a, phi), -l, one)?,
        GaussianTerm::new(Complex64::new(a, 0.0), l, one)?,
    ]);
    Ok(SingleTrialDensity {
        wave: free_evolve(&initial, t)?,
    })
}

/// Trial-averaged density with its per-point standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloDensity {
    pub mean: SampledDensity,
    /// Sample standard deviation over `√N`; zero when only one trial was drawn.
    pub std_error: Vec<f64>,
    pub ensemble: PhaseEnsemble,
}

/// Average of [`single_trial_density`] over the phases of `ens`.
///
/// Grid points run in parallel; each point sums its trials in draw order, so
/// the result is bit-identical for a given seed.
pub fn dephased_density_monte_carlo(
    l: f64,
    ens: &PhaseEnsemble,
    t: f64,
    grid: &Grid,
) -> Result<MonteCarloDensity> {
    require_large_l(l)?;
    check_time(t)?;
    let ens = PhaseEnsemble::new(ens.gamma, ens.samples, ens.seed)?;

    // per trial: (cos φ, sin φ, A_φ²)
    let trials: Vec<(f64, f64, f64)> = ens
        .phases()
        .into_iter()
        .map(|phi| {
            let (s, c) = phi.sin_cos();
            let a = phased_normalization(l, phi);
            (c, s, a * a)
        })
        .collect();

    let one = Complex64::new(1.0, 0.0);
    let left = free_evolve(
        &Wavefunction::new(vec![GaussianTerm::new(one, -l, one)?]),
        t,
    )?;
    let right = free_evolve(&Wavefunction::new(vec![GaussianTerm::new(one, l, one)?]), t)?;

    let n = trials.len() as f64;
    let stats: Vec<(f64, f64)> = (0..grid.n)
        .into_par_iter()
        .map(|i| {
            let x = grid.x(i);
            let gm = left.eval(x);
            let gp = right.eval(x);
            let incoherent = gm.norm_sqr() + gp.norm_sqr();
            let cross = gm * gp.conj();
            let trial = |&(c, s, a2): &(f64, f64, f64)| {
                a2 * (incoherent + 2.0 * (c * cross.re - s * cross.im))
            };
            // shifted sums keep the variance free of cancellation
            let shift = trial(&trials[0]);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for tr in &trials {
                let d = trial(tr) - shift;
                sum += d;
                sum_sq += d * d;
            }
            let mean = shift + sum / n;
            let se = if trials.len() > 1 {
                let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
                (var / n).sqrt()
            } else {
                0.0
            };
            (mean, se)
        })
        .collect();

    let (mean, std_error): (Vec<f64>, Vec<f64>) = stats.into_iter().unzip();
    Ok(MonteCarloDensity {
        mean: SampledDensity::new(*grid, mean)?,
        std_error,
        ensemble: ens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::{first_fringe_minimum, measured_density, MeasurementModel};
    use crate::params::Sigma;
    use crate::wavepacket::free_density;

    fn screen(t: f64) -> Grid {
        Grid::for_density(5.0, t)
    }

    #[test]
    fn analytic_limits() {
        let free = free_density(5.0, 30.0).unwrap();
        let undamped = dephased_density_analytic(5.0, 0.0, 30.0).unwrap();
        let washed = dephased_density_analytic(5.0, 60.0, 30.0).unwrap();
        let incoherent =
            measured_density(&MeasurementModel::new(Sigma::PERFECT, 5.0).unwrap(), 30.0).unwrap();
        for x in Grid::symmetric(200.0, 1001).unwrap().points() {
            assert!((undamped.density(x) - free.density(x)).abs() < 1e-12);
            assert!((washed.density(x) - incoherent.density(x)).abs() < 1e-10);
        }
        let g2 = dephased_density_analytic(5.0, 2.0, 30.0).unwrap();
        assert!((g2.coherence() - 0.135335283236612692).abs() < 1e-16);
        assert!(dephased_density_analytic(2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn single_trial_without_phase_is_free() {
        let trial = single_trial_density(5.0, 0.0, 30.0).unwrap();
        let free = free_density(5.0, 30.0).unwrap();
        for x in Grid::symmetric(200.0, 1001).unwrap().points() {
            assert!((trial.density(x) - free.density(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn opposite_phase_turns_the_center_into_a_minimum() {
        let flipped = single_trial_density(5.0, PI, 30.0).unwrap();
        let h = 0.05;
        let c = flipped.density(0.0);
        assert!(c < flipped.density(h) && c < flipped.density(-h));
        let free = free_density(5.0, 30.0).unwrap();
        assert!(c < 0.1 * free.density(0.0));
    }

    #[test]
    fn quarter_phase_shifts_the_fringes_by_a_quarter_period() {
        // fringe spacing is 2x*, so φ = π/2 moves the central maximum to -x*/2
        let t = 30.0;
        let x_star = first_fringe_minimum(5.0, t);
        let trial = single_trial_density(5.0, PI / 2.0, t).unwrap();
        let grid = Grid::new(-x_star, 0.0, 20001).unwrap();
        let v = trial.sample(&grid).values;
        let (imax, _) = v
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |a, (i, &p)| if p > a.1 { (i, p) } else { a });
        let peak = grid.x(imax);
        assert!(
            (peak + x_star / 2.0).abs() < 0.02 * x_star,
            "peak {peak}, x* {x_star}"
        );
    }

    #[test]
    fn every_density_is_normalized() {
        for t in [0.0, 30.0] {
            for phi in [0.0, 1.0, PI, -2.5] {
                let p = single_trial_density(5.0, phi, t).unwrap();
                assert!((p.sample(&screen(t)).integral() - 1.0).abs() < 1e-8);
            }
            let ens = PhaseEnsemble::new(2.0, 500, 9).unwrap();
            let mc = dephased_density_monte_carlo(5.0, &ens, t, &screen(t)).unwrap();
            assert!((mc.mean.integral() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn ensemble_validation() {
        assert!(PhaseEnsemble::new(1.0, 0, 1).is_err());
        assert!(PhaseEnsemble::new(-1.0, 10, 1).is_err());
        assert!(PhaseEnsemble::new(f64::INFINITY, 10, 1).is_err());
        let ens = PhaseEnsemble {
            gamma: 1.0,
            samples: 0,
            seed: 1,
        };
        assert!(dephased_density_monte_carlo(5.0, &ens, 1.0, &screen(1.0)).is_err());
    }

    #[test]
    fn phases_are_seeded_gaussians() {
        let ens = PhaseEnsemble::new(2.0, 200_001, 42).unwrap();
        let p = ens.phases();
        assert_eq!(p.len(), 200_001);
        assert_eq!(p, ens.phases());
        let n = p.len() as f64;
        let mean = p.iter().sum::<f64>() / n;
        let var = p.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        assert!(mean.abs() < 0.02);
        assert!((var.sqrt() - 2.0).abs() < 0.02);
        let other = PhaseEnsemble::new(2.0, 10, 43).unwrap().phases();
        assert_ne!(&p[..10], &other[..]);
    }

    #[test]
    fn zero_width_ensemble_is_exact() {
        let ens = PhaseEnsemble::new(0.0, 1000, 3).unwrap();
        let grid = screen(30.0);
        let mc = dephased_density_monte_carlo(5.0, &ens, 30.0, &grid).unwrap();
        let analytic = dephased_density_analytic(5.0, 0.0, 30.0)
            .unwrap()
            .sample(&grid);
        assert!(mc.mean.max_abs_diff(&analytic) < 1e-12);
        assert!(mc.std_error.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn averaging_damps_only_the_oscillation() {
        // mean of P over one fringe period, windows centered on coherent fringe maxima
        // so the linear slope of the envelope cancels
        let t = 30.0;
        let period = 2.0 * first_fringe_minimum(5.0, t);
        let coherent = dephased_density_analytic(5.0, 0.0, t).unwrap();
        let washed = dephased_density_analytic(5.0, 3.0, t).unwrap();
        for x0 in [0.0, period, 2.0 * period, 3.0 * period] {
            let g = Grid::new(x0 - period / 2.0, x0 + period / 2.0, 2001).unwrap();
            let a = coherent.sample(&g).integral() / period;
            let b = washed.sample(&g).integral() / period;
            assert!((a - b).abs() < 1e-3, "x0={x0}: {a} vs {b}");
        }
    }

    #[test]
    fn error_at_center_falls_like_inverse_square_root() {
        let grid = Grid::symmetric(1.0, 3).unwrap();
        let exact = dephased_density_analytic(5.0, 2.0, 30.0)
            .unwrap()
            .density(0.0);
        let rms = |n: usize| -> f64 {
            let sq: f64 = (0..40u64)
                .map(|seed| {
                    let ens = PhaseEnsemble::new(2.0, n, 1000 + seed).unwrap();
                    let mc = dephased_density_monte_carlo(5.0, &ens, 30.0, &grid).unwrap();
                    (mc.mean.values[1] - exact).powi(2)
                })
                .sum();
            (sq / 40.0).sqrt()
        };
        let errs: Vec<f64> = [100, 1000, 10_000].iter().map(|&n| rms(n)).collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            let expected = 10f64.sqrt();
            assert!(ratio > expected / 3.0 && ratio < expected * 3.0, "{errs:?}");
        }
    }
}
