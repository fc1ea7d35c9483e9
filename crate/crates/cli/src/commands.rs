//! One function per subcommand; each turns a resolved configuration into tables.

use rayon::prelude::*;
use whichpath_core::apparatus::ApparatusMethod;
use whichpath_core::dephasing::{dephased_density_monte_carlo, PhaseEnsemble};
use whichpath_core::info::{info_visibility_curve, sigma_star, von_neumann_entropy};
use whichpath_core::measurement::{
    conditional_states_exact, evolved_conditional_wavefunctions, visibility, visibility_min_time,
    APPROX_RECOMMENDED_L,
};
use whichpath_core::registry::{apparatus_registry, density_registry};
use whichpath_core::wavepacket::initial_wavefunction;
use whichpath_core::{Error, Grid, MeasurementModel, ModelParams, Sigma, VisibilityTime};

use crate::config::{Command, RunConfig};
use crate::error::CliResult;
use crate::output::Table;

pub fn run(cfg: &RunConfig) -> CliResult<Vec<Table>> {
    if cfg.l < APPROX_RECOMMENDED_L && uses_large_l_approximation(cfg) {
        eprintln!(
            "warning: L = {} is below {APPROX_RECOMMENDED_L}; the large-separation approximation loses accuracy",
            cfg.l
        );
    }
    match cfg.command {
        Command::FreeEvolve => Ok(vec![free_evolve(cfg, "free-evolve")?]),
        Command::Measure => Ok(vec![measure(cfg, "measure")?]),
        Command::Apparatus => Ok(vec![apparatus(cfg)?]),
        Command::InfoCurve => Ok(vec![info_curve(cfg, "info-curve")?]),
        Command::Dephase => Ok(vec![dephase(cfg)?]),
        Command::ReproduceFig => reproduce_fig(cfg),
    }
}

fn uses_large_l_approximation(cfg: &RunConfig) -> bool {
    !matches!(cfg.command, Command::FreeEvolve) && cfg.fig != Some(2)
}

fn label(key: &str, value: impl std::fmt::Display) -> String {
    format!("{key}={value}")
}

/// Evaluates a registered density model for each parameter set on a shared grid.
fn densities(model: &str, params: &[ModelParams], grid: &Grid) -> CliResult<Vec<Vec<f64>>> {
    let registry = density_registry();
    let factory = registry.get(model)?;
    let columns = params
        .par_iter()
        .map(|p| Ok(factory(p)?.sample(grid).values))
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(columns)
}

fn with_norms(mut table: Table, grid: &Grid, columns: &[Vec<f64>]) -> Table {
    for (name, values) in table.columns[1..].to_vec().iter().zip(columns) {
        if name.starts_with('P') {
            table.derive(format!("norm[{name}]"), grid.integrate(values));
        }
    }
    table
}

fn free_evolve(cfg: &RunConfig, name: &str) -> CliResult<Table> {
    let grid = cfg.grid()?;
    let params = cfg
        .t
        .iter()
        .map(|&t| ModelParams::new(cfg.l, Sigma::NONE, t, 0.0))
        .collect::<Result<Vec<_>, Error>>()?;
    let cols = densities("free", &params, &grid)?;
    let mut names = vec!["x".to_string()];
    names.extend(cfg.t.iter().map(|t| format!("P[{}]", label("t", t))));
    let x: Vec<f64> = grid.points().collect();
    Ok(with_norms(
        Table::from_columns(name, names, &x, &cols),
        &grid,
        &cols,
    ))
}

/// Per (σ, t): the measured density and the two conditional densities `|Ψ^L|²`, `|Ψ^R|²`.
fn measure(cfg: &RunConfig, name: &str) -> CliResult<Table> {
    let grid = cfg.grid()?;
    let panels: Vec<(Sigma, f64)> = cfg
        .sigma
        .iter()
        .flat_map(|&s| cfg.t.iter().map(move |&t| (s, t)))
        .collect();
    let params = panels
        .iter()
        .map(|&(s, t)| ModelParams::new(cfg.l, s, t, 0.0))
        .collect::<Result<Vec<_>, Error>>()?;
    let measured = densities("measured", &params, &grid)?;
    let conditional = panels
        .par_iter()
        .map(|&(s, t)| {
            let pair = evolved_conditional_wavefunctions(&MeasurementModel::new(s, cfg.l)?, t)?;
            let left: Vec<f64> = grid.points().map(|x| pair.left.density(x)).collect();
            let right: Vec<f64> = grid.points().map(|x| pair.right.density(x)).collect();
            Ok((left, right))
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut names = vec!["x".to_string()];
    let mut cols = Vec::new();
    for (((s, t), p), (left, right)) in panels.iter().zip(measured).zip(conditional) {
        let tag = format!("{};{}", label("sigma", s), label("t", t));
        names.push(format!("P[{tag}]"));
        names.push(format!("psiL2[{tag}]"));
        names.push(format!("psiR2[{tag}]"));
        cols.extend([p, left, right]);
    }
    let x: Vec<f64> = grid.points().collect();
    let mut table = Table::from_columns(name, names, &x, &cols);

    let mut seen = Vec::new();
    for &(s, t) in &panels {
        let model = MeasurementModel::new(s, cfg.l)?;
        if !seen.contains(&s) {
            seen.push(s);
            let sl = label("sigma", s);
            table.derive(format!("beta[{sl}]"), model.beta());
            table.derive(
                format!("V_asymptotic[{sl}]"),
                visibility(&model, VisibilityTime::Asymptotic)?,
            );
            table.derive(format!("t_min[{sl}]"), visibility_min_time(&model)?);
        }
        // before t_min there is no central maximum and V(t) is undefined
        let v = match visibility(&model, VisibilityTime::At(t)) {
            Ok(v) => v,
            Err(Error::EarlyTime { .. }) => f64::NAN,
            Err(e) => return Err(e.into()),
        };
        table.derive(format!("V[{};{}]", label("sigma", s), label("t", t)), v);
    }
    Ok(with_norms(table, &grid, &cols))
}

/// Exact and closed-form `ρ_A` per σ, one column group per registered method.
fn apparatus(cfg: &RunConfig) -> CliResult<Table> {
    let registry = apparatus_registry();
    let methods: Vec<(&str, Box<dyn ApparatusMethod>)> = registry
        .names()
        .into_iter()
        .map(|n| Ok((n, registry.get(n)?(cfg.tol))))
        .collect::<Result<_, Error>>()?;

    let mut names = vec!["sigma".to_string(), "beta".to_string()];
    for (m, _) in &methods {
        for field in [
            "rho_LL",
            "rho_LR",
            "rho_RR",
            "lambda_1",
            "lambda_2",
            "entropy",
            "error_estimate",
        ] {
            names.push(format!("{m}_{field}"));
        }
    }
    let rows = cfg
        .sigma
        .par_iter()
        .map(|&s| {
            let model = MeasurementModel::new(s, cfg.l)?;
            let mut row = vec![s.value(), model.beta()];
            for (_, method) in &methods {
                let out = method.evaluate(&model)?;
                let ev = out.spectrum.eigenvalues();
                row.extend([
                    out.state.ll(),
                    out.state.lr().re,
                    out.state.rr(),
                    ev[0],
                    ev[1],
                    von_neumann_entropy(&out.spectrum),
                    out.error_estimate.unwrap_or(f64::NAN),
                ]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new("apparatus", names);
    table.rows = rows;
    table.derive("tol", cfg.tol);
    Ok(table)
}

/// `(σ, I_exact, I_approx, V)` with a marker on the row nearest σ*.
fn info_curve(cfg: &RunConfig, name: &str) -> CliResult<Table> {
    let mut sigmas = cfg.sigma.clone();
    sigmas.sort_by(|a, b| a.partial_cmp(b).expect("sigma is never NaN"));
    let rows = info_visibility_curve(cfg.l, &sigmas, cfg.tol)?;
    let star = sigma_star(cfg.l)?;
    let nearest = rows
        .iter()
        .enumerate()
        .min_by(|a, b| {
            let d = |s: Sigma| (s.value().ln() - star.ln()).abs();
            d(a.1.sigma).total_cmp(&d(b.1.sigma))
        })
        .map(|(i, _)| i);
    let mut table = Table::new(
        name,
        [
            "sigma",
            "I_SA_exact",
            "I_SA_approx",
            "V",
            "sigma_star_marker",
        ]
        .map(String::from)
        .to_vec(),
    );
    table.rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let marker = if Some(i) == nearest { 1.0 } else { 0.0 };
            vec![
                r.sigma.value(),
                r.i_sa_exact,
                r.i_sa_approx,
                r.visibility,
                marker,
            ]
        })
        .collect();
    table.derive("sigma_star", star);
    Ok(table)
}

/// Analytic dephased density against the Monte Carlo ensemble average.
fn dephase(cfg: &RunConfig) -> CliResult<Table> {
    let grid = cfg.grid()?;
    let ens = PhaseEnsemble::new(cfg.gamma, cfg.samples, cfg.seed)?;
    let params = cfg
        .t
        .iter()
        .map(|&t| ModelParams::new(cfg.l, Sigma::NONE, t, cfg.gamma))
        .collect::<Result<Vec<_>, Error>>()?;
    let analytic = densities("dephased", &params, &grid)?;
    // the Monte Carlo itself is parallel over grid points; panels run in order
    let mut names = vec!["x".to_string()];
    let mut cols = Vec::new();
    for (&t, exact) in cfg.t.iter().zip(analytic) {
        let mc = dephased_density_monte_carlo(cfg.l, &ens, t, &grid)?;
        let tl = label("t", t);
        names.extend([
            format!("P_analytic[{tl}]"),
            format!("P_mc[{tl}]"),
            format!("stderr[{tl}]"),
        ]);
        cols.extend([exact, mc.mean.values, mc.std_error]);
    }
    let x: Vec<f64> = grid.points().collect();
    let mut table = Table::from_columns("dephase", names, &x, &cols);
    table.derive("coherence", (-cfg.gamma * cfg.gamma / 2.0).exp());
    Ok(with_norms(table, &grid, &cols))
}

/// `Ψ`, `Ψ^L`, `Ψ^R` and `m_L²`, `m_R²` at t = 0, from the exact grid conditional states.
fn conditional_states(cfg: &RunConfig, s: Sigma) -> CliResult<Table> {
    let grid = cfg.grid()?;
    let model = MeasurementModel::new(s, cfg.l)?;
    let psi = initial_wavefunction(cfg.l)?.sample(&grid);
    let pair = conditional_states_exact(&psi, &model)?;
    let x: Vec<f64> = grid.points().collect();
    let cols = vec![
        psi.values.iter().map(|v| v.re).collect(),
        pair.left.values.iter().map(|v| v.re).collect(),
        pair.right.values.iter().map(|v| v.re).collect(),
        x.iter().map(|&x| model.m_left(x).powi(2)).collect(),
        x.iter().map(|&x| model.m_right(x).powi(2)).collect(),
    ];
    let names = ["x", "psi", "psi_L", "psi_R", "m_L_sq", "m_R_sq"]
        .map(String::from)
        .to_vec();
    let mut table = Table::from_columns(format!("fig3_sigma{s}"), names, &x, &cols);
    table.derive("beta", model.beta());
    table.derive("weight_L", pair.weight_left);
    table.derive("weight_R", pair.weight_right);
    Ok(table)
}

fn reproduce_fig(cfg: &RunConfig) -> CliResult<Vec<Table>> {
    let fig = cfg.fig.expect("resolved figure id");
    match fig {
        2 => cfg
            .t
            .par_iter()
            .map(|&t| {
                free_evolve(
                    &RunConfig {
                        t: vec![t],
                        ..cfg.clone()
                    },
                    &format!("fig2_t{t}"),
                )
            })
            .collect(),
        3 => cfg
            .sigma
            .iter()
            .map(|&s| conditional_states(cfg, s))
            .collect(),
        4 => cfg
            .sigma
            .par_iter()
            .map(|&s| {
                let c = RunConfig {
                    sigma: vec![s],
                    ..cfg.clone()
                };
                measure(&c, &format!("fig4_sigma{s}"))
            })
            .collect(),
        _ => Ok(vec![info_curve(cfg, "fig5")?]),
    }
}
