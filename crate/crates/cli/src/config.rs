//! Fully resolved run configuration and the manifest that reproduces it.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use whichpath_core::info::log_grid;
use whichpath_core::measurement::T_MIN_TOL;
use whichpath_core::{Grid, Sigma};

use crate::error::{CliError, CliResult};

pub const DEFAULT_L: f64 = 5.0;
pub const DEFAULT_GRID_N: usize = 4097;
pub const DEFAULT_GAMMA: f64 = 2.0;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_SEED: u64 = 1;

/// Free-evolution panel times. The source figure does not state them.
pub const FREE_TIMES: [f64; 4] = [0.0, 10.0, 30.0, 60.0];
/// Measured-density panels: perfect, near σ*, intermediate, and 3L.
pub const MEASURE_SIGMAS: [f64; 4] = [0.0, 1.5, 4.0, 15.0];
pub const MEASURE_TIME: f64 = 30.0;
pub const CONDITIONAL_SIGMA: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    FreeEvolve,
    Measure,
    Apparatus,
    InfoCurve,
    Dephase,
    ReproduceFig,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::FreeEvolve => "free-evolve",
            Command::Measure => "measure",
            Command::Apparatus => "apparatus",
            Command::InfoCurve => "info-curve",
            Command::Dephase => "dephase",
            Command::ReproduceFig => "reproduce-fig",
        }
    }
}

/// Everything a run depends on. Output location is deliberately excluded so
/// that replaying a manifest elsewhere produces identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fig: Option<u8>,
    #[serde(rename = "L")]
    pub l: f64,
    pub sigma: Vec<Sigma>,
    pub t: Vec<f64>,
    pub gamma: f64,
    pub grid_n: usize,
    pub x_max: f64,
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub format: Format,
}

/// Raw, possibly partial user input before per-command defaults are applied.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub l: Option<f64>,
    pub sigma: Option<Vec<Sigma>>,
    pub t: Option<Vec<f64>>,
    pub gamma: Option<f64>,
    pub grid_n: Option<usize>,
    pub x_max: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
}

fn sigmas(values: &[f64]) -> Vec<Sigma> {
    values
        .iter()
        .map(|&s| Sigma::new(s).expect("valid default"))
        .collect()
}

/// 200 log-spaced σ in [0.01, 50].
pub fn info_curve_sigmas() -> Vec<Sigma> {
    sigmas(&log_grid(0.01, 50.0, 200))
}

impl RunConfig {
    pub fn resolve(command: Command, fig: Option<u8>, o: Overrides) -> CliResult<Self> {
        let l = o.l.unwrap_or(DEFAULT_L);
        if !(l.is_finite() && l > 0.0) {
            return Err(CliError::Usage(format!("--L must be positive, got {l}")));
        }
        let fig = match command {
            Command::ReproduceFig => match fig {
                Some(f @ 2..=5) => Some(f),
                Some(1) => {
                    return Err(CliError::Usage(
                        "figure 1 is a schematic and has no data; choose 2, 3, 4 or 5".into(),
                    ))
                }
                Some(f) => {
                    return Err(CliError::Usage(format!(
                        "unknown figure {f}; choose 2, 3, 4 or 5"
                    )))
                }
                None => return Err(CliError::Usage("missing figure id".into())),
            },
            _ => None,
        };

        let (default_sigma, default_t) = match (command, fig) {
            (Command::FreeEvolve, _) | (Command::ReproduceFig, Some(2)) => {
                (vec![Sigma::NONE], FREE_TIMES.to_vec())
            }
            (Command::Measure, _) | (Command::ReproduceFig, Some(4)) => {
                (sigmas(&MEASURE_SIGMAS), vec![MEASURE_TIME])
            }
            (Command::ReproduceFig, Some(3)) => (sigmas(&[CONDITIONAL_SIGMA]), vec![0.0]),
            (Command::Apparatus, _) => (sigmas(&[0.0, 1.5, 4.0, 15.0, f64::INFINITY]), vec![]),
            (Command::InfoCurve, _) | (Command::ReproduceFig, _) => (info_curve_sigmas(), vec![]),
            (Command::Dephase, _) => (vec![Sigma::NONE], vec![MEASURE_TIME]),
        };
        let sigma = o.sigma.unwrap_or(default_sigma);
        let t = o.t.unwrap_or(default_t);
        if sigma.is_empty() {
            return Err(CliError::Usage("--sigma list is empty".into()));
        }
        if t.is_empty() && uses_time(command, fig) {
            return Err(CliError::Usage("--t list is empty".into()));
        }
        if let Some(bad) = t.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(CliError::Usage(format!(
                "times must be finite and >= 0, got {bad}"
            )));
        }

        let t_max = t.iter().copied().fold(0.0, f64::max);
        let x_max = o.x_max.unwrap_or_else(|| default_x_max(command, l, t_max));
        let grid_n = o.grid_n.unwrap_or(DEFAULT_GRID_N);
        let tol = o
            .tol
            .unwrap_or(whichpath_core::measurement::DEFAULT_QUAD_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {tol}"
            )));
        }
        let cfg = RunConfig {
            command,
            fig,
            l,
            sigma,
            t,
            gamma: o.gamma.unwrap_or(DEFAULT_GAMMA),
            grid_n,
            x_max,
            seed: o.seed.unwrap_or(DEFAULT_SEED),
            samples: o.samples.unwrap_or(DEFAULT_SAMPLES),
            tol,
            format: o.format.unwrap_or(Format::Csv),
        };
        cfg.grid()?;
        Ok(cfg)
    }

    pub fn grid(&self) -> CliResult<Grid> {
        Grid::symmetric(self.x_max, self.grid_n)
            .map_err(|e| CliError::Usage(format!("--x-max/--grid-n: {e}")))
    }

    /// Parameters that are tool choices rather than values fixed by the model's source.
    pub fn non_paper_parameters(&self) -> Vec<NonPaperParameter> {
        let mut out = Vec::new();
        let mut flag = |name: &str, reason: &str| {
            out.push(NonPaperParameter {
                name: name.to_string(),
                reason: reason.to_string(),
            })
        };
        if uses_grid(self.command, self.fig) {
            flag("grid_n", "sampling resolution");
            flag("x_max", "sampling window half-width");
        }
        match (self.command, self.fig) {
            (Command::FreeEvolve, _) | (Command::ReproduceFig, Some(2)) => {
                flag("t", "panel times are not stated for the free-evolution figure; defaults 0, 10, 30, 60")
            }
            (Command::Measure, _) | (Command::ReproduceFig, Some(4)) => flag(
                "sigma",
                "only sigma = 0 and sigma = 3L are stated; the middle panels 1.5 (near sigma*) and 4 are chosen",
            ),
            (Command::InfoCurve, _) | (Command::ReproduceFig, Some(5)) => {
                flag("sigma", "200 log-spaced points in [0.01, 50]")
            }
            (Command::Dephase, _) => {
                flag("gamma", "dephasing width");
                flag("samples", "Monte Carlo trial count");
                flag("seed", "Monte Carlo seed");
            }
            _ => {}
        }
        flag("tol", "apparatus-state quadrature tolerance");
        out
    }
}

fn uses_time(command: Command, fig: Option<u8>) -> bool {
    !matches!(
        (command, fig),
        (Command::Apparatus, _) | (Command::InfoCurve, _) | (Command::ReproduceFig, Some(5))
    )
}

fn uses_grid(command: Command, fig: Option<u8>) -> bool {
    uses_time(command, fig)
}

fn default_x_max(command: Command, l: f64, t_max: f64) -> f64 {
    match command {
        Command::Apparatus | Command::InfoCurve => l + 10.0,
        _ => l + 8.0 * (1.0 + t_max * t_max).sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonPaperParameter {
    pub name: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub quadrature: f64,
    pub t_min_bisection: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub tolerances: Tolerances,
    pub non_paper_parameters: Vec<NonPaperParameter>,
}

impl Manifest {
    pub fn new(config: &RunConfig) -> Self {
        Manifest {
            tool: "whichpath".into(),
            version: whichpath_core::VERSION.into(),
            config: config.clone(),
            tolerances: Tolerances {
                quadrature: config.tol,
                t_min_bisection: T_MIN_TOL,
            },
            non_paper_parameters: config.non_paper_parameters(),
        }
    }
}
