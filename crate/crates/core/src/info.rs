//! Entropies, mutual information and the information–visibility trade-off.

use rayon::prelude::*;
use serde::Serialize;

use crate::apparatus::{ApparatusMethod, ClosedFormMethod, QuadratureMethod};
use crate::error::{domain, Result};
use crate::measurement::{asymptotic_visibility, MeasurementModel};
use crate::params::{check_separation, Sigma};
use crate::qubit::Spectrum;

const LOG_FLOOR: f64 = 1e-300;
const NEGLIGIBLE_BITS: f64 = 1e-15;

/// `-Σ λ log₂ λ` with `0 log 0 = 0`.
pub fn von_neumann_entropy(spectrum: &Spectrum) -> f64 {
    spectrum
        .eigenvalues()
        .iter()
        .map(|&l| {
            let l = l.clamp(LOG_FLOOR, 1.0);
            -l * l.log2()
        })
        .filter(|c| *c >= NEGLIGIBLE_BITS)
        .fold(0.0, |acc, c| acc + c)
}

/// `H_bin(x) = -x log₂ x - (1-x) log₂(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("binary entropy needs x in [0, 1], got {x}"));
    }
    Ok(von_neumann_entropy(&Spectrum::new(vec![x, 1.0 - x])?))
}

/// `I(S:A) = 2 H(ρ_A)`: the joint system–apparatus state is pure.
pub fn mutual_info_sa(model: &MeasurementModel, method: &dyn ApparatusMethod) -> Result<f64> {
    Ok(2.0 * von_neumann_entropy(&method.evaluate(model)?.spectrum))
}

/// Information gained by an observer that reads the apparatus perfectly:
/// `I(S:O) = H(ρ_S) = H(ρ_A)`, at most one bit.
pub fn mutual_info_so(model: &MeasurementModel, method: &dyn ApparatusMethod) -> Result<f64> {
    Ok(von_neumann_entropy(&method.evaluate(model)?.spectrum))
}

/// Precision below which the apparatus tells the two paths apart, `σ* ≈ 3L/10`.
pub fn sigma_star(l: f64) -> Result<f64> {
    check_separation(l)?;
    Ok(0.3 * l)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfoReport {
    pub entropy_s: f64,
    pub entropy_a: f64,
    pub mutual_info_sa: f64,
    pub mutual_info_so: f64,
    pub visibility: f64,
    pub sigma: Sigma,
    #[serde(rename = "L")]
    pub l: f64,
}

/// All information quantities for one model. `H(ρ_S) = H(ρ_A)` by Schmidt decomposition.
pub fn info_report(model: &MeasurementModel, method: &dyn ApparatusMethod) -> Result<InfoReport> {
    let h = von_neumann_entropy(&method.evaluate(model)?.spectrum);
    Ok(InfoReport {
        entropy_s: h,
        entropy_a: h,
        mutual_info_sa: 2.0 * h,
        mutual_info_so: h,
        visibility: asymptotic_visibility(model.beta(), model.l),
        sigma: model.sigma,
        l: model.l,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoRow {
    pub sigma: Sigma,
    pub i_sa_exact: f64,
    pub i_sa_approx: f64,
    pub visibility: f64,
}

/// `I(S:A)` by quadrature and in closed form, with the asymptotic visibility, per `σ`.
pub fn info_visibility_curve(l: f64, sigmas: &[Sigma], tol: f64) -> Result<Vec<InfoRow>> {
    check_separation(l)?;
    if sigmas.windows(2).any(|w| w[1] < w[0]) {
        return domain("sigma grid must be sorted ascending");
    }
    let exact = QuadratureMethod { tol };
    sigmas
        .par_iter()
        .map(|&sigma| {
            let model = MeasurementModel::new(sigma, l)?;
            Ok(InfoRow {
                sigma,
                i_sa_exact: mutual_info_sa(&model, &exact)?,
                i_sa_approx: mutual_info_sa(&model, &ClosedFormMethod)?,
                visibility: asymptotic_visibility(model.beta(), l),
            })
        })
        .collect()
}

/// `n` log-spaced values in `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == 0 {
                        lo
                    } else if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// 200 log-spaced precisions in `[0.01, 10L]` bracketed by `0` and `∞`.
pub fn default_sigma_grid(l: f64) -> Vec<Sigma> {
    let mut grid = vec![Sigma::PERFECT];
    grid.extend(
        log_grid(0.01, 10.0 * l, 200)
            .into_iter()
            .map(|s| Sigma::new(s).expect("log grid is positive")),
    );
    grid.push(Sigma::NONE);
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::beta;

    fn model(s: Sigma) -> MeasurementModel {
        MeasurementModel::new(s, 5.0).unwrap()
    }

    fn spectrum(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_of_reference_spectra() {
        assert_eq!(von_neumann_entropy(&spectrum(&[1.0, 0.0])), 0.0);
        assert_eq!(von_neumann_entropy(&spectrum(&[0.5, 0.5])), 1.0);
        let h = von_neumann_entropy(&spectrum(&[0.8075, 0.1925]));
        assert!((h - 0.706672069275611825).abs() < 1e-14);
        assert!(von_neumann_entropy(&spectrum(&[1.0 - 1e-18, 1e-18])).is_finite());
        assert!(Spectrum::new(vec![0.6, 0.6]).is_err());
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert!((binary_entropy(0.80745).unwrap() - 0.706775487865652997).abs() < 1e-14);
        assert!((binary_entropy(0.3).unwrap() - binary_entropy(0.7).unwrap()).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn mutual_information_limits() {
        let exact = QuadratureMethod::default();
        assert_eq!(
            mutual_info_sa(&model(Sigma::NONE), &ClosedFormMethod).unwrap(),
            0.0
        );
        assert!(mutual_info_sa(&model(Sigma::NONE), &exact).unwrap() < 1e-8);
        let perfect = mutual_info_sa(&model(Sigma::PERFECT), &ClosedFormMethod).unwrap();
        assert!((perfect - 2.0).abs() < 1e-15);
        assert_eq!(mutual_info_sa(&model(Sigma::PERFECT), &exact).unwrap(), 2.0);
        assert!(
            (mutual_info_so(&model(Sigma::PERFECT), &ClosedFormMethod).unwrap() - 1.0).abs()
                < 1e-15
        );
        assert_eq!(
            mutual_info_so(&model(Sigma::NONE), &ClosedFormMethod).unwrap(),
            0.0
        );
    }

    #[test]
    fn mutual_information_at_sigma_4() {
        let m = model(Sigma::new(4.0).unwrap());
        let approx = mutual_info_sa(&m, &ClosedFormMethod).unwrap();
        assert!((approx - 1.41380391563554881).abs() < 1e-13);
        let exact = mutual_info_sa(&m, &QuadratureMethod::default()).unwrap();
        // 30-digit: 2 H((1 + 2·0.3074436802435323)/2)
        assert!((exact - 2.0 * 0.706788557820245739).abs() < 1e-9);
        let so = mutual_info_so(&m, &ClosedFormMethod).unwrap();
        let via_beta = binary_entropy((1.0 + m.beta()) / 2.0).unwrap();
        assert!((so - via_beta).abs() < 1e-10);
    }

    #[test]
    fn sigma_star_and_its_beta() {
        assert_eq!(sigma_star(5.0).unwrap(), 1.5);
        assert_eq!(sigma_star(10.0).unwrap(), 3.0);
        assert!(sigma_star(0.0).is_err());
        let b = beta(Sigma::new(1.5).unwrap(), 5.0).unwrap();
        assert!((b - 0.0414186547549441544).abs() < 1e-15);
    }

    #[test]
    fn report_is_consistent() {
        let r = info_report(
            &model(Sigma::new(2.0).unwrap()),
            &QuadratureMethod::default(),
        )
        .unwrap();
        assert_eq!(r.mutual_info_sa, 2.0 * r.entropy_a);
        assert_eq!(r.mutual_info_so, r.entropy_s);
        assert!((0.0..=1.0).contains(&r.visibility));
    }

    #[test]
    fn curve_shape() {
        let l = 5.0;
        let grid: Vec<Sigma> = log_grid(0.01, 50.0, 40)
            .into_iter()
            .map(|s| Sigma::new(s).unwrap())
            .collect();
        let rows = info_visibility_curve(l, &grid, 1e-10).unwrap();
        assert_eq!(rows.len(), 40);
        for w in rows.windows(2) {
            assert!(w[1].i_sa_approx <= w[0].i_sa_approx + 1e-12);
            assert!(w[1].visibility >= w[0].visibility - 1e-12);
        }
        for r in &rows {
            assert!((r.i_sa_exact - r.i_sa_approx).abs() < 0.02, "{r:?}");
        }
        let last = rows.last().unwrap();
        assert!(last.i_sa_approx < 0.05 && last.visibility > 0.99);
        let star =
            info_visibility_curve(l, &[Sigma::PERFECT, Sigma::new(1.5).unwrap()], 1e-10).unwrap();
        assert!((star[0].i_sa_approx - star[1].i_sa_approx).abs() < 0.05);
        assert!(info_visibility_curve(l, &[Sigma::NONE, Sigma::PERFECT], 1e-10).is_err());
    }

    #[test]
    fn default_grid_has_endpoints() {
        let g = default_sigma_grid(5.0);
        assert_eq!(g.len(), 202);
        assert!(g[0].is_perfect() && g[201].is_none());
        assert_eq!(g[1].value(), 0.01);
        assert_eq!(g[200].value(), 50.0);
    }
}
