//! Scenario configuration: the JSON schema, validation with field-path
//! error messages, and the resolved runtime form.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use cohsim_core::{CorrelationTriple, DistanceKind, NoiseClock, PauliAxis};

/// A configuration problem, pointing at the offending field.
#[derive(Debug, Clone, Error)]
#[error("config error at {path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// On-disk scenario description. All fields are plain JSON; see the README
/// for a worked example.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub num_qubits: usize,
    pub initial: InitialConfig,
    pub clock: ClockConfig,
    pub noise: NoiseConfig,
    pub time_grid: GridConfig,
    /// Reference basis axis: 1 = x (plus/minus), 2 = y, 3 = z.
    pub basis: usize,
    pub measures: Vec<MeasureConfig>,
    pub output: OutputConfig,
    #[serde(default)]
    pub seed: u64,
    /// Keep per-replicate series in memory (ensembles only); exports are
    /// always the replicate average.
    #[serde(default)]
    pub retain_replicates: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    pub triple: [f64; 3],
    /// One scale, or several to run side-by-side sub-ensembles.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation_scale: Option<ScaleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replicates: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScaleSpec {
    One(f64),
    Many(Vec<f64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClockConfig {
    pub t2: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NoiseConfig {
    PdOnly,
    PdPlusGad,
    Flip { axis: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub start: f64,
    pub stop: f64,
    /// Number of intervals; the grid has steps + 1 points.
    pub steps: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureConfig {
    pub measure: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: String,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

/// Validated, resolved scenario ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub num_qubits: usize,
    pub initial: Initial,
    pub clock: NoiseClock,
    pub noise: Noise,
    pub grid: Vec<f64>,
    pub basis: PauliAxis,
    pub measures: Vec<MeasureSpec>,
    pub output_path: PathBuf,
    pub format: OutputFormat,
    pub seed: u64,
    pub retain_replicates: bool,
}

#[derive(Debug, Clone)]
pub enum Initial {
    Triple(CorrelationTriple),
    Ensemble {
        triple: CorrelationTriple,
        scales: Vec<f64>,
        replicates: usize,
    },
}

impl Initial {
    pub fn triple(&self) -> &CorrelationTriple {
        match self {
            Initial::Triple(t) => t,
            Initial::Ensemble { triple, .. } => triple,
        }
    }

    pub fn is_ensemble(&self) -> bool {
        matches!(self, Initial::Ensemble { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Noise {
    PdOnly,
    PdPlusGad,
    Flip(PauliAxis),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureId {
    Coherence,
    Floor,
    Quantum,
    Classical,
    Total,
    Entanglement,
    GlobalDiscord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureSpec {
    pub id: MeasureId,
    pub kind: Option<DistanceKind>,
}

impl MeasureSpec {
    /// Stable column name used in exports.
    pub fn column(&self) -> String {
        let base = match self.id {
            MeasureId::Coherence => "coherence",
            MeasureId::Floor => "floor",
            MeasureId::Quantum => "quantum",
            MeasureId::Classical => "classical",
            MeasureId::Total => "total",
            MeasureId::Entanglement => "entanglement",
            MeasureId::GlobalDiscord => "global_discord",
        };
        match (self.id, self.kind) {
            (MeasureId::Coherence | MeasureId::Floor, Some(kind)) => {
                format!("{base}_{}", kind.id())
            }
            (MeasureId::Quantum | MeasureId::Classical | MeasureId::Total
            | MeasureId::Entanglement, _) => format!("{base}_re"),
            _ => base.to_string(),
        }
    }
}

fn parse_distance(s: &str) -> Option<DistanceKind> {
    match s {
        "relative_entropy" | "re" => Some(DistanceKind::RelativeEntropy),
        "trace" | "tr" => Some(DistanceKind::Trace),
        "fidelity" | "fid" => Some(DistanceKind::Fidelity),
        "l1" => Some(DistanceKind::L1),
        _ => None,
    }
}

/// Validate a raw configuration into a runnable [`Scenario`].
pub fn validate(config: &ScenarioConfig) -> Result<Scenario, ConfigError> {
    let n = config.num_qubits;
    if n < 2 || !n.is_multiple_of(2) || n > 8 {
        return Err(ConfigError::new(
            "num_qubits",
            format!("qubit count must be even and in 2..=8, got {n}"),
        ));
    }

    let basis = PauliAxis::from_index(config.basis)
        .map_err(|_| ConfigError::new("basis", format!("basis axis must be 1, 2 or 3, got {}", config.basis)))?;

    // Initial state.
    let [c1, c2, c3] = config.initial.triple;
    for (i, c) in config.initial.triple.iter().enumerate() {
        if !c.is_finite() || c.abs() > 1.0 {
            return Err(ConfigError::new(
                format!("initial.triple[{i}]"),
                format!("correlation component must lie in [-1, 1], got {c}"),
            ));
        }
    }
    let triple = CorrelationTriple::new(c1, c2, c3, n)
        .map_err(|e| ConfigError::new("initial.triple", e.to_string()))?;

    let initial = match (&config.initial.perturbation_scale, config.initial.replicates) {
        (None, None) => Initial::Triple(triple),
        (None, Some(_)) => {
            return Err(ConfigError::new(
                "initial.replicates",
                "replicates require a perturbation_scale",
            ));
        }
        (Some(spec), replicates) => {
            let scales = match spec {
                ScaleSpec::One(s) => vec![*s],
                ScaleSpec::Many(v) => v.clone(),
            };
            if scales.is_empty() {
                return Err(ConfigError::new(
                    "initial.perturbation_scale",
                    "need at least one scale",
                ));
            }
            if let Some(bad) = scales.iter().find(|s| !s.is_finite() || **s < 0.0) {
                return Err(ConfigError::new(
                    "initial.perturbation_scale",
                    format!("scales must be nonnegative, got {bad}"),
                ));
            }
            if n != 2 {
                return Err(ConfigError::new(
                    "initial.perturbation_scale",
                    "perturbed ensembles are supported for two qubits only",
                ));
            }
            if triple.min_eigenvalue() < 1e-3 {
                return Err(ConfigError::new(
                    "initial.triple",
                    format!(
                        "triple too close to the physicality boundary for perturbation (margin {:.2e} < 1e-3)",
                        triple.min_eigenvalue()
                    ),
                ));
            }
            let replicates = replicates.unwrap_or(1);
            if replicates == 0 {
                return Err(ConfigError::new("initial.replicates", "must be at least 1"));
            }
            Initial::Ensemble {
                triple,
                scales,
                replicates,
            }
        }
    };

    // Clock.
    if config.clock.t2.len() != n {
        return Err(ConfigError::new(
            "clock.t2",
            format!("need one T2 per qubit ({n}), got {}", config.clock.t2.len()),
        ));
    }
    let clock = NoiseClock::new(
        config.clock.t2.clone(),
        config.clock.t1.clone(),
        config.clock.alpha,
    )
    .map_err(|e| ConfigError::new("clock", e.to_string()))?;

    // Noise model.
    let noise = match &config.noise {
        NoiseConfig::PdOnly => Noise::PdOnly,
        NoiseConfig::PdPlusGad => {
            if clock.t1().is_none() {
                return Err(ConfigError::new(
                    "noise.kind",
                    "pd_plus_gad requires clock.t1",
                ));
            }
            Noise::PdPlusGad
        }
        NoiseConfig::Flip { axis } => Noise::Flip(PauliAxis::from_index(*axis).map_err(|_| {
            ConfigError::new("noise.axis", format!("flip axis must be 1, 2 or 3, got {axis}"))
        })?),
    };

    // Time grid.
    let g = &config.time_grid;
    if !g.start.is_finite() || !g.stop.is_finite() || g.start < 0.0 {
        return Err(ConfigError::new("time_grid.start", "times must be finite and nonnegative"));
    }
    if g.steps == 0 {
        return Err(ConfigError::new(
            "time_grid.steps",
            "grid needs at least one step (two points)",
        ));
    }
    if g.stop <= g.start {
        return Err(ConfigError::new(
            "time_grid.stop",
            "stop must exceed start (strictly increasing grid)",
        ));
    }
    let grid: Vec<f64> = (0..=g.steps)
        .map(|k| g.start + (g.stop - g.start) * k as f64 / g.steps as f64)
        .collect();

    // Measures.
    if config.measures.is_empty() {
        return Err(ConfigError::new("measures", "need at least one measure"));
    }
    let mut measures = Vec::with_capacity(config.measures.len());
    for (i, m) in config.measures.iter().enumerate() {
        let id = match m.measure.as_str() {
            "coherence" => MeasureId::Coherence,
            "floor" => MeasureId::Floor,
            "quantum" => MeasureId::Quantum,
            "classical" => MeasureId::Classical,
            "total" => MeasureId::Total,
            "entanglement" => MeasureId::Entanglement,
            "global_discord" => MeasureId::GlobalDiscord,
            other => {
                return Err(ConfigError::new(
                    format!("measures[{i}].measure"),
                    format!("unknown measure '{other}'"),
                ));
            }
        };
        let kind = match (&m.distance, id) {
            (Some(d), MeasureId::Coherence | MeasureId::Floor) => {
                Some(parse_distance(d).ok_or_else(|| {
                    ConfigError::new(
                        format!("measures[{i}].distance"),
                        format!("unknown distance '{d}'"),
                    )
                })?)
            }
            (None, MeasureId::Coherence | MeasureId::Floor) => {
                return Err(ConfigError::new(
                    format!("measures[{i}].distance"),
                    "coherence and floor measures need a distance kind",
                ));
            }
            (Some(d), _) => {
                let parsed = parse_distance(d);
                if parsed != Some(DistanceKind::RelativeEntropy) {
                    return Err(ConfigError::new(
                        format!("measures[{i}].distance"),
                        "correlation measures support relative_entropy only",
                    ));
                }
                None
            }
            (None, _) => None,
        };
        let two_qubit_only = matches!(
            id,
            MeasureId::Quantum | MeasureId::Classical | MeasureId::Total | MeasureId::Entanglement
        );
        if two_qubit_only && n != 2 {
            return Err(ConfigError::new(
                format!("measures[{i}].measure"),
                format!("'{}' requires a two-qubit scenario", m.measure),
            ));
        }
        if matches!(id, MeasureId::Entanglement | MeasureId::GlobalDiscord)
            && initial.is_ensemble()
        {
            return Err(ConfigError::new(
                format!("measures[{i}].measure"),
                format!("'{}' is defined on BD-form sweeps, not perturbed ensembles", m.measure),
            ));
        }
        measures.push(MeasureSpec { id, kind });
    }

    if config.output.path.is_empty() {
        return Err(ConfigError::new("output.path", "must not be empty"));
    }

    Ok(Scenario {
        name: config.name.clone(),
        num_qubits: n,
        initial,
        clock,
        noise,
        grid,
        basis,
        measures: measures.clone(),
        output_path: PathBuf::from(&config.output.path),
        format: config.output.format,
        seed: config.seed,
        retain_replicates: config.retain_replicates,
    })
}

/// Parse and validate a JSON config file's contents.
pub fn parse_config(json: &str) -> Result<Scenario, ConfigError> {
    let config: ScenarioConfig = serde_json::from_str(json)
        .map_err(|e| ConfigError::new("<root>", format!("invalid JSON: {e}")))?;
    validate(&config)
}
