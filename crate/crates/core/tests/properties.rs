use proptest::prelude::*;
use whichpath_core::apparatus::{ClosedFormMethod, QuadratureMethod};
use whichpath_core::info::{binary_entropy, mutual_info_sa, mutual_info_so};
use whichpath_core::measurement::{beta, conditional_states_exact, m_sigma, visibility};
use whichpath_core::wavepacket::{free_density, free_evolve, initial_wavefunction};
use whichpath_core::{DensityModel, Grid, MeasurementModel, Sigma, VisibilityTime};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn povm_is_complete(x in -20.0f64..20.0, s in 1e-6f64..100.0) {
        let s = Sigma::new(s).unwrap();
        let sum = m_sigma(-x, s).powi(2) + m_sigma(x, s).powi(2);
        prop_assert!((sum - 1.0).abs() < 1e-13);
    }

    #[test]
    fn free_density_is_even(x in 0.0f64..300.0, t in 0.0f64..100.0, l in 3.0f64..12.0) {
        let p = free_density(l, t).unwrap();
        prop_assert!((p.density(x) - p.density(-x)).abs() < 1e-14);
        prop_assert!(p.density(x) >= 0.0);
    }

    #[test]
    fn free_density_is_normalized(t in 0.0f64..60.0, l in 3.0f64..10.0) {
        let p = free_density(l, t).unwrap();
        let total = p.sample(&Grid::for_density(l, t)).integral();
        prop_assert!((total - 1.0).abs() < 1e-8, "{total}");
    }

    #[test]
    fn evolved_wavefunction_matches_density(x in -80.0f64..80.0, t in 0.0f64..40.0) {
        let psi = free_evolve(&initial_wavefunction(5.0).unwrap(), t).unwrap();
        let p = free_density(5.0, t).unwrap();
        prop_assert!((psi.density(x) - p.density(x)).abs() < 1e-12);
    }

    #[test]
    fn information_quantities_stay_in_range(s in 0.0f64..200.0, l in 5.0f64..10.0) {
        let model = MeasurementModel::new(Sigma::new(s).unwrap(), l).unwrap();
        let sa = mutual_info_sa(&model, &ClosedFormMethod).unwrap();
        let so = mutual_info_so(&model, &ClosedFormMethod).unwrap();
        let v = visibility(&model, VisibilityTime::Asymptotic).unwrap();
        prop_assert!((0.0..=2.0).contains(&sa));
        prop_assert!((0.0..=1.0).contains(&so));
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert!((sa - 2.0 * so).abs() < 1e-12);
        // with e^{-L²} negligible, I(S:O) = H_bin((1+β)/2)
        let via_beta = binary_entropy((1.0 + model.beta()) / 2.0).unwrap();
        prop_assert!((so - via_beta).abs() < 1e-6);
    }
}

#[test]
fn beta_is_monotone_on_a_fine_grid() {
    let grid: Vec<f64> = (0..200).map(|i| 0.01 * 1.04f64.powi(i)).collect();
    let betas: Vec<f64> = grid
        .iter()
        .map(|&s| beta(Sigma::new(s).unwrap(), 5.0).unwrap())
        .collect();
    assert!(betas.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn channel_preserves_probability() {
    let grid = Grid::symmetric(15.0, 4097).unwrap();
    let psi = initial_wavefunction(5.0).unwrap().sample(&grid);
    for s in [0.0, 0.1, 0.8, 1.5, 3.0, 4.0, 10.0, 40.0, f64::INFINITY] {
        let pair = conditional_states_exact(
            &psi,
            &MeasurementModel::new(Sigma::new(s).unwrap(), 5.0).unwrap(),
        )
        .unwrap();
        let mix: Vec<f64> = (0..grid.n).map(|i| pair.mixture_density(i)).collect();
        assert!((grid.integrate(&mix) - 1.0).abs() < 1e-9, "σ={s}");
    }
}

#[test]
fn schmidt_spectra_agree() {
    let grid = Grid::symmetric(15.0, 4097).unwrap();
    let psi0 = initial_wavefunction(5.0).unwrap();
    let sampled = psi0.sample(&grid);
    for s in [0.2, 0.5, 1.5, 4.0, 10.0, 50.0] {
        let model = MeasurementModel::new(Sigma::new(s).unwrap(), 5.0).unwrap();
        let system = conditional_states_exact(&sampled, &model)
            .unwrap()
            .system_spectrum();
        let app = whichpath_core::measurement::apparatus_state_exact(&psi0, &model, 1e-12)
            .unwrap()
            .state
            .spectrum();
        for (a, b) in system.eigenvalues().iter().zip(app.eigenvalues()) {
            assert!((a - b).abs() < 1e-6, "σ={s}: {a} vs {b}");
        }
    }
}

#[test]
fn duality_on_log_grid() {
    let exact = QuadratureMethod::default();
    for s in whichpath_core::info::log_grid(0.01, 50.0, 100) {
        let model = MeasurementModel::new(Sigma::new(s).unwrap(), 5.0).unwrap();
        for method in [
            &exact as &dyn whichpath_core::ApparatusMethod,
            &ClosedFormMethod,
        ] {
            let sa = mutual_info_sa(&model, method).unwrap();
            let so = mutual_info_so(&model, method).unwrap();
            assert!((sa - 2.0 * so).abs() < 1e-9);
        }
    }
}

#[test]
fn exact_and_closed_form_eigenvalues_agree() {
    let exact = QuadratureMethod::default();
    use whichpath_core::ApparatusMethod;
    for s in whichpath_core::info::log_grid(0.01, 50.0, 60) {
        let model = MeasurementModel::new(Sigma::new(s).unwrap(), 5.0).unwrap();
        let a = exact.evaluate(&model).unwrap().spectrum;
        let b = ClosedFormMethod.evaluate(&model).unwrap().spectrum;
        assert!(
            (a.eigenvalues()[0] - b.eigenvalues()[0]).abs() < 0.01,
            "σ={s}"
        );
    }
}
