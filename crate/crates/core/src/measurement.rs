//! Tunable-precision which-path measurement.
//!
//! The apparatus records `L` or `R` through the measurement functions
//! `m_L(x) = m_σ(-x)` and `m_R(x) = m_σ(x)` with
//! `m_σ(x) = [½ erfc(-x / (σ√2))]^{1/2}`, so that `m_L² + m_R² = 1`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64;

use crate::density::{DensityModel, FringeDensity};
use crate::error::{domain, Error, Result};
use crate::grid::SampledWave;
use crate::oracle::adaptive_integrate;
use crate::params::{check_separation, check_time, Sigma};
use crate::qubit::{QubitState, Spectrum};
use crate::special::erfc;
use crate::wavepacket::{free_evolve, GaussianTerm, Wavefunction};

/// Smallest separation accepted by the large-L approximations.
pub const APPROX_MIN_L: f64 = 3.0;

/// Below this separation the large-L approximation is usable but loose.
pub const APPROX_RECOMMENDED_L: f64 = 5.0;

/// Default absolute tolerance for apparatus-state quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Half-width beyond `±L` kept when integrating over the initial state.
const QUAD_MARGIN: f64 = 10.0;

const NORM_TOL: f64 = 1e-6;

/// `m_σ(x)`; `σ = 0` is the step function (`1/√2` at the origin) and `σ = ∞` the constant `1/√2`.
pub fn m_sigma(x: f64, sigma: Sigma) -> f64 {
    if sigma.is_none() {
        return FRAC_1_SQRT_2;
    }
    if sigma.is_perfect() {
        return if x > 0.0 {
            1.0
        } else if x < 0.0 {
            0.0
        } else {
            FRAC_1_SQRT_2
        };
    }
    (0.5 * erfc(-x / (sigma.value() * SQRT_2))).max(0.0).sqrt()
}

/// Smooth position projector `(σ√(2π))^{-1} exp(-(x - x')² / (2σ²))`.
pub fn smooth_projector_kernel(x_prime: f64, x: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return domain(format!("kernel needs finite sigma > 0, got {sigma}"));
    }
    let d = x - x_prime;
    Ok((-(d * d) / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt()))
}

/// `β_σ = 2 m_σ(-L) m_σ(L)`, the overlap parameter that sets fringe visibility.
pub fn beta(sigma: Sigma, l: f64) -> Result<f64> {
    check_separation(l)?;
    Ok(beta_unchecked(sigma, l))
}

fn beta_unchecked(sigma: Sigma, l: f64) -> f64 {
    if sigma.is_none() {
        return 1.0;
    }
    (2.0 * m_sigma(-l, sigma) * m_sigma(l, sigma)).min(1.0)
}

/// Precision `σ` applied to the double-slit state with half-separation `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementModel {
    pub sigma: Sigma,
    pub l: f64,
}

impl MeasurementModel {
    pub fn new(sigma: Sigma, l: f64) -> Result<Self> {
        check_separation(l)?;
        Ok(MeasurementModel { sigma, l })
    }

    pub fn m_left(&self, x: f64) -> f64 {
        m_sigma(-x, self.sigma)
    }

    pub fn m_right(&self, x: f64) -> f64 {
        m_sigma(x, self.sigma)
    }

    pub fn beta(&self) -> f64 {
        beta_unchecked(self.sigma, self.l)
    }

    fn require_large_l(&self) -> Result<()> {
        if self.l < APPROX_MIN_L {
            return Err(Error::ApproximationDomain {
                min: APPROX_MIN_L,
                got: self.l,
            });
        }
        Ok(())
    }
}

/// The two post-measurement states `Ψ^L`, `Ψ^R`, each normalized, mixed with weights ½, ½.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalPair<S> {
    pub left: S,
    pub right: S,
    pub weight_left: f64,
    pub weight_right: f64,
}

impl<S> ConditionalPair<S> {
    fn even(left: S, right: S) -> Self {
        ConditionalPair {
            left,
            right,
            weight_left: 0.5,
            weight_right: 0.5,
        }
    }
}

impl ConditionalPair<SampledWave> {
    /// `⟨Ψ^L|Ψ^R⟩` on the grid.
    pub fn overlap(&self) -> Complex64 {
        self.left.inner(&self.right)
    }

    /// Nonzero eigenvalues `(1 ± |⟨Ψ^L|Ψ^R⟩|)/2` of the mixed system state.
    pub fn system_spectrum(&self) -> Spectrum {
        let s = self.overlap().norm().min(1.0);
        Spectrum::new(vec![0.5 * (1.0 + s), 0.5 * (1.0 - s)])
            .expect("overlap magnitude is clamped to [0, 1]")
    }

    pub fn mixture_density(&self, i: usize) -> f64 {
        self.weight_left * self.left.values[i].norm_sqr()
            + self.weight_right * self.right.values[i].norm_sqr()
    }
}

impl ConditionalPair<Wavefunction> {
    pub fn mixture_density(&self, x: f64) -> f64 {
        self.weight_left * self.left.density(x) + self.weight_right * self.right.density(x)
    }
}

/// `Ψ^{L/R} = √2 m_{L/R} Ψ` on the grid of `psi0`, each renormalized there.
pub fn conditional_states_exact(
    psi0: &SampledWave,
    model: &MeasurementModel,
) -> Result<ConditionalPair<SampledWave>> {
    let norm = psi0.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return domain(format!("input state has norm² {norm}, expected 1"));
    }
    let apply = |m: &dyn Fn(f64) -> f64| -> Result<SampledWave> {
        let values = psi0.iter().map(|(x, v)| v * (SQRT_2 * m(x))).collect();
        let state = SampledWave {
            grid: psi0.grid,
            values,
        };
        let n = state.norm_sqr();
        if !(n > 0.0) {
            return domain("conditional state vanishes on the grid");
        }
        Ok(state.scaled(n.sqrt().recip()))
    };
    Ok(ConditionalPair::even(
        apply(&|x| model.m_left(x))?,
        apply(&|x| model.m_right(x))?,
    ))
}

/// `B = [√π (1 + β e^{-L²})]^{-1/2}`.
pub fn approx_normalization(model: &MeasurementModel) -> f64 {
    let l = model.l;
    (PI.sqrt() * (1.0 + model.beta() * (-l * l).exp()))
        .sqrt()
        .recip()
}

/// Large-L conditional states, with each packet weighted by `m_σ` at its own center:
/// `Ψ^L ≈ B[m_σ(L) e^{-(x+L)²/2} + m_σ(-L) e^{-(x-L)²/2}]` and `Ψ^R` mirrored.
pub fn conditional_states_approx(
    model: &MeasurementModel,
) -> Result<ConditionalPair<Wavefunction>> {
    model.require_large_l()?;
    let b = approx_normalization(model);
    let near = m_sigma(model.l, model.sigma);
    let far = m_sigma(-model.l, model.sigma);
    let one = Complex64::new(1.0, 0.0);
    let pair = |left_weight: f64, right_weight: f64| -> Result<Wavefunction> {
        Ok(Wavefunction::new(vec![
            GaussianTerm::new(Complex64::new(b * left_weight, 0.0), -model.l, one)?,
            GaussianTerm::new(Complex64::new(b * right_weight, 0.0), model.l, one)?,
        ]))
    };
    Ok(ConditionalPair::even(pair(near, far)?, pair(far, near)?))
}

/// Apparatus state computed by quadrature, with the summed quadrature error.
#[derive(Debug, Clone, PartialEq)]
pub struct ApparatusExact {
    pub state: QubitState,
    pub error_estimate: f64,
    pub tol: f64,
}

/// `ρ_A` with entries `∫ m_i m_j |Ψ|² dx`, integrated over `[-L-10, L+10]`.
///
/// At `σ = 0` the off-diagonal is exactly zero: `m_L m_R` vanishes away from
/// the origin. The closed form in [`apparatus_state_approx`] instead keeps the
/// `e^{-L²}` overlap of the two packets.
pub fn apparatus_state_exact(
    psi: &Wavefunction,
    model: &MeasurementModel,
    tol: f64,
) -> Result<ApparatusExact> {
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return domain(format!("input state has norm² {norm}, expected 1"));
    }
    let (a, b) = quadrature_window(model.l);
    let part_tol = tol / 3.0;
    let ll = adaptive_integrate(|x| model.m_left(x).powi(2) * psi.density(x), a, b, part_tol)?;
    let rr = adaptive_integrate(
        |x| model.m_right(x).powi(2) * psi.density(x),
        a,
        b,
        part_tol,
    )?;
    let lr = if model.sigma.is_perfect() {
        crate::oracle::Quadrature {
            value: 0.0,
            error: 0.0,
        }
    } else {
        adaptive_integrate(
            |x| model.m_left(x) * model.m_right(x) * psi.density(x),
            a,
            b,
            part_tol,
        )?
    };
    // the truncated domain misses ~e^{-100} of the norm; restore unit trace
    let trace = ll.value + rr.value;
    let state = QubitState::real(ll.value / trace, lr.value / trace, rr.value / trace)?;
    Ok(ApparatusExact {
        state,
        error_estimate: ll.error + rr.error + lr.error,
        tol,
    })
}

/// Off-diagonal `(β + e^{-L²}) / (1 + β e^{-L²})` of `2ρ_A` from the large-L states.
pub fn approx_coherence(model: &MeasurementModel) -> f64 {
    let e = (-model.l * model.l).exp();
    let b = model.beta();
    (b + e) / (1.0 + b * e)
}

/// Closed-form `ρ_A = ½[[1, c], [c, 1]]` with `c` from [`approx_coherence`].
pub fn apparatus_state_approx(model: &MeasurementModel) -> Result<QubitState> {
    model.require_large_l()?;
    QubitState::real(0.5, 0.5 * approx_coherence(model), 0.5)
}

/// `λ_± = ½(1 ± c)`, with `1 - c = (1-β)(1-e^{-L²})/(1+βe^{-L²})` kept free of cancellation.
pub fn approx_eigenvalues(model: &MeasurementModel) -> Result<Spectrum> {
    model.require_large_l()?;
    let e = (-model.l * model.l).exp();
    let b = model.beta();
    let c = approx_coherence(model);
    let one_minus_c = (1.0 - b) * (1.0 - e) / (1.0 + b * e);
    Spectrum::new(vec![0.5 * (1.0 + c), 0.5 * one_minus_c])
}

/// Mixture density `P_σ(x,t) = Γ_σ^{xt}[cosh(2xL/(1+t²)) + β cos(2txL/(1+t²))]`,
/// `Γ_σ^{xt} = e^{-(x²+L²)/(1+t²)} / (√(π(1+t²)) (1 + β e^{-L²}))`.
pub fn measured_density(model: &MeasurementModel, t: f64) -> Result<FringeDensity> {
    model.require_large_l()?;
    check_time(t)?;
    let b = model.beta();
    let l = model.l;
    let prefactor = 1.0 / (PI.sqrt() * (1.0 + b * (-l * l).exp()));
    Ok(FringeDensity::new("measured", l, t, prefactor, b))
}

/// The large-L conditional states after free flight for time `t`.
pub fn evolved_conditional_wavefunctions(
    model: &MeasurementModel,
    t: f64,
) -> Result<ConditionalPair<Wavefunction>> {
    let pair = conditional_states_approx(model)?;
    Ok(ConditionalPair::even(
        free_evolve(&pair.left, t)?,
        free_evolve(&pair.right, t)?,
    ))
}

/// When to evaluate the fringe visibility.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VisibilityTime {
    At(f64),
    Asymptotic,
}

/// Bisection tolerance on `t_min`.
pub const T_MIN_TOL: f64 = 1e-6;

/// Earliest time at which `P_σ` has a local maximum at the origin, found by
/// bisection on the sign of `∂²P/∂x²(0)`.
pub fn visibility_min_time(model: &MeasurementModel) -> Result<f64> {
    let curvature =
        |t: f64| -> Result<f64> { Ok(measured_density(model, t)?.curvature_at_origin()) };
    if curvature(0.0)? < 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while curvature(hi)? >= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            return domain("no central maximum found");
        }
    }
    let mut lo = 0.0;
    while hi - lo > T_MIN_TOL {
        let mid = 0.5 * (lo + hi);
        if curvature(mid)? < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// First minimum of the oscillation term, `x* = π(1+t²)/(2tL)`.
pub fn first_fringe_minimum(l: f64, t: f64) -> f64 {
    PI * (1.0 + t * t) / (2.0 * t * l)
}

/// Fringe visibility `[P(0) - P(x*)] / [P(0) + P(x*)]` at time `t`, or its `t → ∞` limit
/// `[(1+β) - q(1-β)] / [(1+β) + q(1-β)]` with `q = e^{-π²/(4L²)}`.
pub fn visibility(model: &MeasurementModel, when: VisibilityTime) -> Result<f64> {
    match when {
        VisibilityTime::Asymptotic => Ok(asymptotic_visibility(model.beta(), model.l)),
        VisibilityTime::At(t) => {
            check_time(t)?;
            let t_min = visibility_min_time(model)?;
            if t < t_min || t == 0.0 {
                return Err(Error::EarlyTime { t, t_min });
            }
            let p = measured_density(model, t)?;
            let center = p.density(0.0);
            let trough = p.density(first_fringe_minimum(model.l, t));
            Ok((center - trough) / (center + trough))
        }
    }
}

pub(crate) fn asymptotic_visibility(beta: f64, l: f64) -> f64 {
    let q = (-PI * PI / (4.0 * l * l)).exp();
    let num = (1.0 + beta) - q * (1.0 - beta);
    let den = (1.0 + beta) + q * (1.0 - beta);
    num / den
}

/// Integration window `[-L-10, L+10]` used for the apparatus state.
pub fn quadrature_window(l: f64) -> (f64, f64) {
    (-l - QUAD_MARGIN, l + QUAD_MARGIN)
}
