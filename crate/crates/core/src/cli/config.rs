//! JSON scenario configuration with explicit units.

use std::f64::consts::{FRAC_PI_2, LN_2};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bath::{self, BathParameters};
use crate::dimer::{self, DimerParameters};
use crate::dynamics::{self, Basis, InitialState, LindbladModel, ModelOptions, Tolerances};
use crate::units;
use crate::{Error, Result};

const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub dimer: DimerConfig,
    pub bath: BathConfig,
    pub model: ModelConfig,
    pub initial_state: InitialStateConfig,
    pub grid: GridConfig,
    pub solver: SolverConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DimerConfig {
    #[serde(rename = "J_mev")]
    pub j_mev: f64,
    pub delta_mev: f64,
    pub epsilon_bar_mev: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyUnit {
    Mev,
    Cm1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergyQuantity {
    pub value: f64,
    pub unit: EnergyUnit,
}

impl EnergyQuantity {
    pub fn in_mev(&self) -> f64 {
        match self.unit {
            EnergyUnit::Mev => self.value,
            EnergyUnit::Cm1 => units::mev_from_wavenumber(self.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BathConfig {
    pub lambda: EnergyQuantity,
    pub tau_c_ps: f64,
    #[serde(rename = "temperature_K")]
    pub temperature_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub dephasing_basis: Basis,
    pub include_thermal: bool,
    pub include_dephasing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    SiteSuperposition,
    Bright,
    Dark,
    ExcitonMixture,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InitialStateConfig {
    pub kind: InitialKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_rad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bright_fraction: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub t_max_fs: f64,
    pub n_points: usize,
    pub spacing: Spacing,
    /// First nonzero time of a log grid; defaults to t_max/1000.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_min_fs: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for DimerConfig {
    fn default() -> Self {
        DimerConfig {
            j_mev: -34.0,
            delta_mev: 0.0,
            epsilon_bar_mev: 0.0,
        }
    }
}

impl Default for BathConfig {
    fn default() -> Self {
        BathConfig {
            lambda: EnergyQuantity {
                value: 270.0,
                unit: EnergyUnit::Cm1,
            },
            tau_c_ps: 0.1,
            temperature_k: 293.0,
        }
    }
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            dephasing_basis: Basis::Site,
            include_thermal: true,
            include_dephasing: true,
        }
    }
}

impl Default for InitialStateConfig {
    fn default() -> Self {
        InitialStateConfig {
            kind: InitialKind::SiteSuperposition,
            phase_rad: Some(FRAC_PI_2),
            bright_fraction: None,
        }
    }
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            t_max_fs: 200.0,
            n_points: 401,
            spacing: Spacing::Linear,
            t_min_fs: None,
        }
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        let t = Tolerances::default();
        SolverConfig {
            rtol: t.rtol,
            atol: t.atol,
        }
    }
}

impl Default for ScenarioConfig {
    /// Venus-like homodimer at room temperature with site-basis dephasing.
    fn default() -> Self {
        ScenarioConfig {
            dimer: DimerConfig::default(),
            bath: BathConfig::default(),
            model: ModelConfig::default(),
            initial_state: InitialStateConfig::default(),
            grid: GridConfig::default(),
            solver: SolverConfig::default(),
        }
    }
}

fn merge(target: &mut Value, patch: &Value) {
    match (target, patch) {
        (Value::Object(t), Value::Object(p)) => {
            for (k, v) in p {
                merge(t.entry(k.clone()).or_insert(Value::Null), v);
            }
        }
        (t, p) => *t = p.clone(),
    }
}

fn require(ok: bool, field: &str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(field, message))
    }
}

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Deep-merges a partial config (JSON object) into this one.
    pub fn with_overrides(&self, overrides: &Value) -> Result<Self> {
        if overrides.is_null() {
            return Ok(self.clone());
        }
        if !overrides.is_object() {
            return Err(Error::Config("overrides must be a JSON object".into()));
        }
        let mut value = serde_json::to_value(self)?;
        merge(&mut value, overrides);
        serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
    }

    /// Range checks on every field, in declaration order.
    pub fn validate(&self) -> Result<()> {
        let d = &self.dimer;
        require(d.j_mev.is_finite(), "dimer.J_mev", "must be finite")?;
        require(
            d.delta_mev.is_finite() && d.delta_mev >= 0.0,
            "dimer.delta_mev",
            "must be finite and >= 0",
        )?;
        require(
            d.epsilon_bar_mev.is_finite(),
            "dimer.epsilon_bar_mev",
            "must be finite",
        )?;

        let b = &self.bath;
        require(
            b.lambda.value.is_finite() && b.lambda.value >= 0.0,
            "bath.lambda.value",
            "must be finite and >= 0",
        )?;
        require(
            b.tau_c_ps.is_finite() && b.tau_c_ps > 0.0,
            "bath.tau_c_ps",
            "must be > 0",
        )?;
        require(
            b.temperature_k.is_finite() && b.temperature_k > 0.0,
            "bath.temperature_K",
            "must be > 0",
        )?;

        let s = &self.initial_state;
        if let Some(phase) = s.phase_rad {
            require(
                phase.is_finite(),
                "initial_state.phase_rad",
                "must be finite",
            )?;
        }
        if let Some(w) = s.bright_fraction {
            require(
                (0.0..=1.0).contains(&w),
                "initial_state.bright_fraction",
                "must be in [0, 1]",
            )?;
        }

        let g = &self.grid;
        require(
            (1..=MAX_GRID_POINTS).contains(&g.n_points),
            "grid.n_points",
            "must be between 1 and 10000000",
        )?;
        require(
            g.t_max_fs.is_finite() && g.t_max_fs > 0.0,
            "grid.t_max_fs",
            "must be > 0",
        )?;
        if let Some(t_min) = g.t_min_fs {
            require(
                t_min.is_finite() && t_min > 0.0 && t_min < g.t_max_fs,
                "grid.t_min_fs",
                "must be in (0, t_max_fs)",
            )?;
        }

        let v = &self.solver;
        require(
            v.rtol.is_finite() && v.rtol > 0.0 && v.rtol < 1.0,
            "solver.rtol",
            "must be in (0, 1)",
        )?;
        require(
            v.atol.is_finite() && v.atol > 0.0,
            "solver.atol",
            "must be > 0",
        )?;

        if self.model.include_thermal {
            let p = DimerParameters::new(d.j_mev, d.delta_mev, d.epsilon_bar_mev)?;
            require(
                dimer::exciton_splitting(&p) > 0.0,
                "model.include_thermal",
                "requires a nonzero exciton splitting",
            )?;
        }
        Ok(())
    }

    pub fn time_grid(&self) -> Vec<f64> {
        let g = &self.grid;
        let n = g.n_points;
        if n == 1 {
            return vec![0.0];
        }
        match g.spacing {
            Spacing::Linear => (0..n)
                .map(|i| {
                    if i == n - 1 {
                        g.t_max_fs
                    } else {
                        g.t_max_fs * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
            Spacing::Log => {
                let t_min = g.t_min_fs.unwrap_or(g.t_max_fs * 1e-3);
                let mut grid = vec![0.0];
                if n == 2 {
                    grid.push(g.t_max_fs);
                } else {
                    grid.extend(crate::analysis::log_space(t_min, g.t_max_fs, n - 1));
                }
                grid
            }
        }
    }

    /// Validates and converts to internal units.
    pub fn resolve(&self) -> Result<Scenario> {
        self.validate()?;
        let d = &self.dimer;
        let b = &self.bath;
        let initial = match self.initial_state.kind {
            InitialKind::SiteSuperposition => InitialState::SiteSuperposition {
                phase: self.initial_state.phase_rad.unwrap_or(FRAC_PI_2),
            },
            InitialKind::Bright => InitialState::Bright,
            InitialKind::Dark => InitialState::Dark,
            InitialKind::ExcitonMixture => InitialState::ExcitonMixture {
                bright_fraction: self.initial_state.bright_fraction.unwrap_or(0.5),
            },
        };
        Ok(Scenario {
            dimer: DimerParameters::new(d.j_mev, d.delta_mev, d.epsilon_bar_mev)?,
            bath: BathParameters::new(
                b.lambda.in_mev(),
                1.0 / (b.tau_c_ps * 1000.0),
                b.temperature_k,
            )?,
            options: ModelOptions {
                dephasing_basis: self.model.dephasing_basis,
                include_dephasing: self.model.include_dephasing,
                include_thermal: self.model.include_thermal,
            },
            initial,
            grid: self.time_grid(),
            tolerances: Tolerances {
                rtol: self.solver.rtol,
                atol: self.solver.atol,
            },
        })
    }
}

/// A validated scenario in internal units.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub dimer: DimerParameters,
    pub bath: BathParameters,
    pub options: ModelOptions,
    pub initial: InitialState,
    pub grid: Vec<f64>,
    pub tolerances: Tolerances,
}

impl Scenario {
    pub fn build_model(&self) -> Result<LindbladModel> {
        dynamics::build_model(&self.dimer, &self.bath, self.options)
    }

    /// Bath-derived rates and exciton quantities; entries that are undefined
    /// for degenerate excitons are `null`.
    pub fn rates_json(&self) -> Value {
        let s = dimer::diagonalize(&self.dimer);
        let thermal = bath::thermal_rates(&self.bath, &s).ok();
        json!({
            "gamma_phi_per_fs": bath::pure_dephasing_rate(&self.bath),
            "gamma_down_per_fs": thermal.map(|r| r.gamma_down),
            "gamma_up_per_fs": thermal.map(|r| r.gamma_up),
            "splitting_mev": s.splitting,
            "beat_period_fs": dimer::beat_period(&self.dimer).ok(),
            "half_life_fs": LN_2 / (2.0 * bath::pure_dephasing_rate(&self.bath)),
            "high_temperature_ratio": self.bath.high_temperature_ratio(),
        })
    }
}
