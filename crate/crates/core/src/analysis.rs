//! Coherence half-lives, temperature sweeps and the figure datasets.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bath::{self, BathParameters};
use crate::cli::config::{InitialKind, Scenario, ScenarioConfig};
use crate::dimer::DimerParameters;
use crate::dynamics::{self, Basis, InitialState, ModelOptions, Trajectory};
use crate::{Error, Result};

/// Half-life of |ρ₁₂| when coherences decay as e^{−2γ_φ t}: ln2/(2γ_φ).
pub fn coherence_half_life_analytic(b: &BathParameters) -> f64 {
    LN_2 / (2.0 * bath::pure_dephasing_rate(b))
}

/// First time the coherence envelope drops to half its initial value.
///
/// The envelope is the piecewise-linear curve through the samples that
/// exceed every later sample (for an oscillating coherence these are the
/// successive peaks; for a monotone decay, every point). The crossing is
/// located by linear interpolation between envelope points.
pub fn coherence_half_life_measured(traj: &Trajectory, basis: Basis) -> Result<f64> {
    let series = traj.coherence_abs(basis);
    let Some(&initial) = series.first() else {
        return Err(Error::invalid("trajectory", "is empty"));
    };
    if !(initial > 0.0) {
        return Err(Error::invalid(
            "trajectory",
            "coherence must start above zero",
        ));
    }
    let half = 0.5 * initial;

    let mut envelope = Vec::new();
    let mut running_max = f64::NEG_INFINITY;
    for i in (0..series.len()).rev() {
        if series[i] > running_max {
            running_max = series[i];
            envelope.push(i);
        }
    }
    envelope.reverse();
    if envelope[0] != 0 {
        envelope.insert(0, 0);
    }

    for pair in envelope.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (ca, cb) = (series[a].min(initial), series[b]);
        if cb <= half {
            let (ta, tb) = (traj.times[a], traj.times[b]);
            if ca <= half {
                return Ok(ta);
            }
            return Ok(ta + (ca - half) / (ca - cb) * (tb - ta));
        }
    }
    Err(Error::NoHalfLife)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    HighTValid,
    HeuristicExtrapolation,
}

impl Validity {
    pub fn for_bath(b: &BathParameters) -> Self {
        if b.is_high_temperature() {
            Validity::HighTValid
        } else {
            Validity::HeuristicExtrapolation
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Validity::HighTValid => "high_T_valid",
            Validity::HeuristicExtrapolation => "heuristic_extrapolation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub value: f64,
    pub gamma_phi: f64,
    pub half_life: f64,
    /// Bright population in the detailed-balance equilibrium; `None` for
    /// degenerate excitons.
    pub steady_bright_pop: Option<f64>,
    pub validity: Validity,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub variable: &'static str,
    pub unit: &'static str,
    pub points: Vec<SweepPoint>,
}

/// Bright-exciton population in the stationary state of the thermal
/// dissipators alone.
pub fn thermal_bright_population(p: &DimerParameters, b: &BathParameters) -> Result<f64> {
    let opts = ModelOptions {
        include_dephasing: false,
        include_thermal: true,
        ..ModelOptions::default()
    };
    let model = dynamics::build_model(p, b, opts)?;
    let rho = dynamics::steady_state(&model)?;
    Ok(bright_population(rho.matrix(), model.exciton_structure()))
}

pub(crate) fn bright_population(
    rho: &nalgebra::Matrix2<num_complex::Complex64>,
    s: &crate::ExcitonStructure,
) -> f64 {
    let v = s.bright_state().map(num_complex::Complex64::from);
    (v.transpose() * rho * v)[(0, 0)].re
}

pub fn temperature_sweep(
    b_template: &BathParameters,
    temperatures: &[f64],
    p: &DimerParameters,
) -> Result<SweepResult> {
    if temperatures.iter().any(|t| !(*t > 0.0) || !t.is_finite()) {
        return Err(Error::invalid("temperatures", "must be finite and > 0"));
    }
    if temperatures.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("temperatures", "must be sorted ascending"));
    }
    let degenerate = crate::dimer::exciton_splitting(p) == 0.0;
    let points = temperatures
        .iter()
        .map(|&t| {
            let b = b_template.with_temperature(t)?;
            Ok(SweepPoint {
                value: t,
                gamma_phi: bath::pure_dephasing_rate(&b),
                half_life: coherence_half_life_analytic(&b),
                steady_bright_pop: if degenerate {
                    None
                } else {
                    Some(thermal_bright_population(p, &b)?)
                },
                validity: Validity::for_bath(&b),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        variable: "temperature",
        unit: "K",
        points,
    })
}

/// `n` log-spaced points covering [lo, hi] inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
}

impl FigureId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
        }
    }

    /// Scenario each figure is generated from before overrides.
    pub fn base_config(&self) -> ScenarioConfig {
        let mut c = ScenarioConfig::default();
        match self {
            FigureId::Fig1 => {
                c.grid.t_max_fs = 200.0;
                c.grid.n_points = 401;
            }
            FigureId::Fig2 => {
                c.dimer.delta_mev = 59.28;
                c.model.dephasing_basis = Basis::Energy;
                c.initial_state.kind = InitialKind::ExcitonMixture;
                c.initial_state.phase_rad = None;
                c.initial_state.bright_fraction = Some(0.5);
                c.grid.t_max_fs = 3000.0;
                c.grid.n_points = 601;
            }
            FigureId::Fig3 => {}
        }
        c
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(FigureId::Fig1),
            "fig2" => Ok(FigureId::Fig2),
            "fig3" => Ok(FigureId::Fig3),
            other => Err(Error::UnknownFigure(other.to_string())),
        }
    }
}

/// Temperatures of the cryogenic extrapolation panel.
pub const FIG3_T_MIN_K: f64 = 0.01;
pub const FIG3_T_MAX_K: f64 = 0.1;
pub const FIG3_POINTS: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Panel-specific metadata merged into the dataset header.
    pub metadata: Value,
}

impl Panel {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        self.rows
            .iter()
            .map(|r| match &r[idx] {
                Cell::Num(v) => Some(*v),
                Cell::Text(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureDataset {
    pub figure: FigureId,
    pub config: ScenarioConfig,
    pub header: Value,
    pub panels: Vec<Panel>,
}

pub const TRAJECTORY_COLUMNS: [&str; 11] = [
    "t_fs",
    "rho11",
    "rho22",
    "re_rho12",
    "im_rho12",
    "abs_rho12",
    "rho_pp",
    "rho_mm",
    "re_rho_pm",
    "im_rho_pm",
    "abs_rho_pm",
];

pub fn trajectory_rows(traj: &Trajectory) -> Vec<Vec<Cell>> {
    (0..traj.len())
        .map(|i| {
            [
                traj.times[i],
                traj.site_pop_1[i],
                traj.site_pop_2[i],
                traj.site_coherence_re[i],
                traj.site_coherence_im[i],
                traj.site_coherence_abs[i],
                traj.energy_pop_plus[i],
                traj.energy_pop_minus[i],
                traj.energy_coherence_re[i],
                traj.energy_coherence_im[i],
                traj.energy_coherence_abs[i],
            ]
            .into_iter()
            .map(Cell::Num)
            .collect()
        })
        .collect()
}

/// Conventions every emitted file records, so downstream consumers can
/// refuse data produced under a different normalization.
pub fn conventions(dephasing_basis: Basis) -> Value {
    json!({
        "dissipator": "gamma*(L rho L^dag - 1/2 {L^dag L, rho})",
        "dephasing_operator": format!("sigma_z in the {} basis", dephasing_basis.as_str()),
        "coherence_decay": "exp(-2*gamma_phi*t)",
        "half_life": "ln2/(2*gamma_phi)",
        "exciton_labels": "plus = lower exciton (bright for J<0), minus = upper exciton",
        "units": {"energy": "meV", "time": "fs", "temperature": "K", "rate": "1/fs"},
    })
}

fn trajectory_panel(name: &str, scenario: &Scenario, initial: InitialState) -> Result<Panel> {
    let model = scenario.build_model()?;
    let rho0 = initial.density_matrix(model.exciton_structure())?;
    let traj = dynamics::propagate(&model, &rho0, &scenario.grid, scenario.tolerances)?;
    Ok(Panel {
        name: name.to_string(),
        columns: TRAJECTORY_COLUMNS.to_vec(),
        rows: trajectory_rows(&traj),
        metadata: json!({ "initial_state": initial }),
    })
}

/// Builds the time series behind one of the three figures.
///
/// `overrides` is a partial scenario config (JSON object) deep-merged into
/// the figure's base scenario. The fig1 panels always start from the φ = π/2
/// site superposition and the bright exciton respectively.
pub fn figure_dataset(figure: FigureId, overrides: &Value) -> Result<FigureDataset> {
    let config = figure.base_config().with_overrides(overrides)?;
    let scenario = config.resolve()?;

    let panels = match figure {
        FigureId::Fig1 => vec![
            trajectory_panel(
                "fig1_site",
                &scenario,
                InitialState::SiteSuperposition {
                    phase: std::f64::consts::FRAC_PI_2,
                },
            )?,
            trajectory_panel("fig1_energy", &scenario, InitialState::Bright)?,
        ],
        FigureId::Fig2 => vec![trajectory_panel(
            "fig2_energy",
            &scenario,
            scenario.initial,
        )?],
        FigureId::Fig3 => {
            let temps = log_space(FIG3_T_MIN_K, FIG3_T_MAX_K, FIG3_POINTS);
            let sweep = temperature_sweep(&scenario.bath, &temps, &scenario.dimer)?;
            let rows = sweep
                .points
                .iter()
                .map(|pt| {
                    vec![
                        Cell::Num(pt.value),
                        Cell::Num(pt.gamma_phi),
                        Cell::Num(pt.half_life),
                        Cell::Text(pt.validity.as_str().to_string()),
                    ]
                })
                .collect();
            vec![Panel {
                name: "fig3_half_life".to_string(),
                columns: vec![
                    "temperature_K",
                    "gamma_phi_per_fs",
                    "half_life_fs",
                    "validity_flag",
                ],
                rows,
                metadata: json!({ "sweep_variable": "temperature", "unit": "K" }),
            }]
        }
    };

    let header = json!({
        "figure": figure.as_str(),
        "config": config,
        "rates": scenario.rates_json(),
        "conventions": conventions(scenario.options.dephasing_basis),
    });
    Ok(FigureDataset {
        figure,
        config,
        header,
        panels,
    })
}
