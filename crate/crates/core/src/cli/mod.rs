//! Command-line front end: `simulate`, `figures`, `rates`, `extract-lambda`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 numerical
//! failure (integrator or invariant).

pub mod config;
mod csv;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::analysis::{self, FigureId};
use crate::bath;
use crate::dynamics;
use crate::units;
use crate::Result;

pub use config::{Scenario, ScenarioConfig};
pub use csv::{parse_header, write_table};

#[derive(Debug, Parser)]
#[command(
    name = "exciton-dimer",
    version,
    about = "Lindblad dynamics of an excitonic dimer in a Drude-Lorentz bath"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Propagate a scenario and write the trajectory as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the datasets behind fig1, fig2 or fig3.
    Figures {
        #[arg(long)]
        figure: String,
        #[arg(long)]
        out: PathBuf,
        /// Partial scenario config merged into the figure's defaults.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the dissipative rates and derived quantities as JSON.
    Rates {
        #[arg(long)]
        config: PathBuf,
    },
    /// Reorganization energy implied by a coherence time (single Debye mode).
    ExtractLambda {
        #[arg(long)]
        t2_fs: f64,
        #[arg(long = "temperature-k", default_value_t = 293.0)]
        temperature_k: f64,
        #[arg(long, default_value_t = 0.1)]
        tau_c_ps: f64,
    },
}

pub const LAMBDA_CAVEAT: &str = "caveat: assumes a single Debye (Drude-Lorentz) mode in the motional-narrowing limit; multi-mode dielectric baths give different values";

fn generator_tag() -> String {
    format!("exciton-dimer {}", env!("CARGO_PKG_VERSION"))
}

fn warn_if_heuristic(scenario: &Scenario, err: &mut dyn Write) {
    if !scenario.bath.is_high_temperature() {
        let _ = writeln!(
            err,
            "warning: k_B T/(hbar gamma_c) = {:.3} < {}; high-temperature rates are a heuristic extrapolation",
            scenario.bath.high_temperature_ratio(),
            bath::HIGH_TEMPERATURE_THRESHOLD
        );
    }
}

fn write_file(path: &Path, build: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<()> {
    let mut buf = Vec::new();
    build(&mut buf)?;
    std::fs::write(path, buf)?;
    Ok(())
}

/// Trajectory CSV for `config`. Identical configs give identical bytes.
pub fn simulate_to_writer(config: &ScenarioConfig, w: &mut dyn Write) -> Result<()> {
    let scenario = config.resolve()?;
    let model = scenario.build_model()?;
    let rho0 = scenario.initial.density_matrix(model.exciton_structure())?;
    let traj = dynamics::propagate(&model, &rho0, &scenario.grid, scenario.tolerances)?;
    let header = json!({
        "kind": "trajectory",
        "generator": generator_tag(),
        "config": config,
        "rates": scenario.rates_json(),
        "conventions": analysis::conventions(scenario.options.dephasing_basis),
        "validity": analysis::Validity::for_bath(&scenario.bath).as_str(),
    });
    let rows = analysis::trajectory_rows(&traj);
    write_table(w, &header, &analysis::TRAJECTORY_COLUMNS, &rows)
}

pub fn cmd_simulate(config_path: &Path, output_path: &Path, err: &mut dyn Write) -> Result<()> {
    let config = ScenarioConfig::from_path(config_path)?;
    warn_if_heuristic(&config.resolve()?, err);
    write_file(output_path, |buf| simulate_to_writer(&config, buf))
}

/// Writes one CSV per panel and `<figure>_manifest.json`; returns the paths.
pub fn cmd_figures(figure: &str, output_dir: &Path, overrides: &Value) -> Result<Vec<PathBuf>> {
    let figure: FigureId = figure.parse()?;
    let dataset = analysis::figure_dataset(figure, overrides)?;
    std::fs::create_dir_all(output_dir)?;
    let mut files = Vec::new();
    for panel in &dataset.panels {
        let mut header = dataset.header.clone();
        header["kind"] = json!("figure_panel");
        header["generator"] = json!(generator_tag());
        header["panel"] = json!(panel.name);
        header["panel_metadata"] = panel.metadata.clone();
        let path = output_dir.join(format!("{}.csv", panel.name));
        write_file(&path, |buf| {
            write_table(buf, &header, &panel.columns, &panel.rows)
        })?;
        files.push(path);
    }
    let manifest = json!({
        "figure": figure.as_str(),
        "generator": generator_tag(),
        "files": dataset.panels.iter().map(|p| format!("{}.csv", p.name)).collect::<Vec<_>>(),
        "parameters": dataset.config,
        "rates": dataset.header["rates"],
        "conventions": dataset.header["conventions"],
    });
    let manifest_path = output_dir.join(format!("{}_manifest.json", figure.as_str()));
    write_file(&manifest_path, |buf| {
        serde_json::to_writer_pretty(&mut *buf, &manifest)?;
        buf.push(b'\n');
        Ok(())
    })?;
    files.push(manifest_path);
    Ok(files)
}

/// Rates summary; `steady_bright_pop` is the stationary bright population of
/// the configured model (`null` when the stationary state is not unique).
pub fn rates_report(config: &ScenarioConfig) -> Result<Value> {
    let scenario = config.resolve()?;
    let model = scenario.build_model()?;
    let steady = match dynamics::steady_state(&model) {
        Ok(rho) => Some(analysis::bright_population(
            rho.matrix(),
            model.exciton_structure(),
        )),
        Err(crate::Error::NonUniqueSteadyState { .. }) => None,
        Err(e) => return Err(e),
    };
    let rates = scenario.rates_json();
    Ok(json!({
        "gamma_phi_per_fs": rates["gamma_phi_per_fs"],
        "gamma_down_per_fs": rates["gamma_down_per_fs"],
        "gamma_up_per_fs": rates["gamma_up_per_fs"],
        "splitting_mev": rates["splitting_mev"],
        "beat_period_fs": rates["beat_period_fs"],
        "steady_bright_pop": steady,
        "half_life_fs": rates["half_life_fs"],
    }))
}

pub fn cmd_rates(config_path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let config = ScenarioConfig::from_path(config_path)?;
    warn_if_heuristic(&config.resolve()?, err);
    let report = rates_report(&config)?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(())
}

pub fn cmd_extract_lambda(
    t2_fs: f64,
    temperature_k: f64,
    tau_c_ps: f64,
    out: &mut dyn Write,
) -> Result<()> {
    if !(tau_c_ps > 0.0) || !tau_c_ps.is_finite() {
        return Err(crate::Error::invalid("tau_c_ps", "must be > 0"));
    }
    let lambda = bath::extract_lambda(t2_fs, 1.0 / (tau_c_ps * 1000.0), temperature_k)?;
    writeln!(out, "lambda_mev = {}", csv::format_number(lambda))?;
    writeln!(
        out,
        "lambda_cm1 = {}",
        csv::format_number(units::wavenumber_from_mev(lambda))
    )?;
    writeln!(out, "{LAMBDA_CAVEAT}")?;
    Ok(())
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Simulate { config, out: path } => cmd_simulate(&config, &path, err),
        Command::Figures {
            figure,
            out: dir,
            config,
        } => {
            let overrides = match config {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)
                    .map_err(|e| crate::Error::Config(e.to_string()))?,
                None => Value::Null,
            };
            for path in cmd_figures(&figure, &dir, &overrides)? {
                writeln!(out, "{}", path.display())?;
            }
            Ok(())
        }
        Command::Rates { config } => cmd_rates(&config, out, err),
        Command::ExtractLambda {
            t2_fs,
            temperature_k,
            tau_c_ps,
        } => cmd_extract_lambda(t2_fs, temperature_k, tau_c_ps, out),
    }
}

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
