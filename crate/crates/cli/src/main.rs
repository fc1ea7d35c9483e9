//! `whichpath`: data for double-slit interference under a tunable which-path measurement.

mod commands;
mod config;
mod error;
mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use whichpath_core::Sigma;

use crate::config::{Command, Format, Manifest, Overrides, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{gnuplot_stub, render};

#[derive(Parser, Debug)]
#[command(name = "whichpath", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Half slit separation, in slit widths.
    #[arg(long = "L")]
    l: Option<f64>,
    /// Grid point count.
    #[arg(long)]
    grid_n: Option<usize>,
    /// Grid half-width; the grid spans [-x_max, x_max].
    #[arg(long)]
    x_max: Option<f64>,
    /// Apparatus-state quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (a directory for reproduce-fig). Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a gnuplot script stub next to each data file (`<out>.gp`).
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Args, Debug, Clone, Default)]
struct Sweep {
    /// Measurement precisions, comma separated; `inf` means no measurement.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sigma: Option<Vec<Sigma>>,
    /// Times, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    t: Option<Vec<f64>>,
}

#[derive(Args, Debug, Clone, Default)]
struct Noise {
    /// Width of the Gaussian phase noise.
    #[arg(long)]
    gamma: Option<f64>,
    /// Monte Carlo trial count.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Free double-slit density at each time.
    FreeEvolve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Density after a which-path measurement, with conditional-state densities.
    Measure {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Apparatus state by quadrature and in closed form.
    Apparatus {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Mutual information and visibility against σ.
    InfoCurve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Phase-dephased density, analytic and Monte Carlo.
    Dephase {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
        #[command(flatten)]
        noise: Noise,
    },
    /// Write the data behind figure 2, 3, 4 or 5 into a directory.
    ReproduceFig {
        fig: u8,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Rerun from a manifest, or from a CSV/JSON output that embeds one.
    Replay {
        source: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        gnuplot: bool,
    },
}

fn overrides(common: &Common, sweep: Sweep, noise: Noise) -> Overrides {
    Overrides {
        l: common.l,
        sigma: sweep.sigma,
        t: sweep.t,
        gamma: noise.gamma,
        grid_n: common.grid_n,
        x_max: common.x_max,
        seed: noise.seed,
        samples: noise.samples,
        tol: common.tol,
        format: common.format,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cmd: Cmd) -> CliResult<()> {
    let (command, fig, common, sweep, noise) = match cmd {
        Cmd::FreeEvolve { common, sweep } => {
            (Command::FreeEvolve, None, common, sweep, Noise::default())
        }
        Cmd::Measure { common, sweep } => (Command::Measure, None, common, sweep, Noise::default()),
        Cmd::Apparatus { common, sweep } => {
            (Command::Apparatus, None, common, sweep, Noise::default())
        }
        Cmd::InfoCurve { common, sweep } => {
            (Command::InfoCurve, None, common, sweep, Noise::default())
        }
        Cmd::Dephase {
            common,
            sweep,
            noise,
        } => (Command::Dephase, None, common, sweep, noise),
        Cmd::ReproduceFig { fig, common, sweep } => (
            Command::ReproduceFig,
            Some(fig),
            common,
            sweep,
            Noise::default(),
        ),
        Cmd::Replay {
            source,
            out,
            gnuplot,
        } => {
            let config = read_manifest(&source)?.config;
            return execute(&config, out.as_deref(), gnuplot);
        }
    };
    let config = RunConfig::resolve(command, fig, overrides(&common, sweep, noise))?;
    execute(&config, common.out.as_deref(), common.gnuplot)
}

fn execute(config: &RunConfig, out: Option<&Path>, gnuplot: bool) -> CliResult<()> {
    let manifest = Manifest::new(config);
    let tables = commands::run(config)?;
    if config.command == Command::ReproduceFig {
        let dir =
            out.ok_or_else(|| CliError::Usage("reproduce-fig needs --out <directory>".into()))?;
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        write_file(&dir.join("manifest.json"), &json)?;
        for table in &tables {
            let file = dir.join(format!("{}.{}", table.name, config.format.extension()));
            write_file(&file, &render(table, &manifest, config.format))?;
            if gnuplot {
                write_file(
                    &file.with_extension("gp"),
                    &gnuplot_stub(table, &file_name(&file)),
                )?;
            }
        }
        return Ok(());
    }

    let table = &tables[0];
    if gnuplot && out.is_none() {
        return Err(CliError::Usage("--gnuplot needs --out".into()));
    }
    let body = render(table, &manifest, config.format);
    match out {
        Some(path) => write_file(path, &body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| CliError::io("<stdout>", e))?;
        }
    }
    if let (true, Some(path)) = (gnuplot, out) {
        write_file(
            &path.with_extension("gp"),
            &gnuplot_stub(table, &file_name(path)),
        )?;
    }
    Ok(())
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Accepts a bare manifest, a JSON output (`manifest` key) or a CSV output (`# manifest` line).
fn read_manifest(path: &Path) -> CliResult<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let bad = |message: String| CliError::BadInput {
        path: path.to_path_buf(),
        message,
    };
    if let Ok(value) = serde_json::from_str::<serde_json::Value>(&text) {
        let manifest = value.get("manifest").cloned().unwrap_or(value);
        return serde_json::from_value(manifest).map_err(|e| bad(format!("invalid manifest: {e}")));
    }
    let line = text
        .lines()
        .take_while(|l| l.starts_with('#'))
        .find_map(|l| l.strip_prefix("# manifest "))
        .ok_or_else(|| bad("no manifest found".into()))?;
    serde_json::from_str(line).map_err(|e| bad(format!("invalid manifest: {e}")))
}
