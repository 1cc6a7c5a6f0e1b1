//! Bundled example scenarios.
//!
//! `fig1` sweeps the two-qubit BD state (1, 0.7, -0.7) under pure phase
//! damping with per-qubit T2 of 0.14 s and 0.90 s; `fig2` runs a perturbed
//! ensemble sharing the triple (0.95, 0.62, -0.65) against its coherence
//! floor; `fig3` sweeps a four-qubit generalized BD state with a collective
//! 0.04 s correlator decay time.

use crate::config::{
    validate, ClockConfig, ConfigError, GridConfig, InitialConfig, MeasureConfig, NoiseConfig,
    OutputConfig, OutputFormat, ScaleSpec, Scenario, ScenarioConfig,
};

pub const BUILTIN_NAMES: [&str; 3] = ["fig1", "fig2", "fig3"];

fn coherence_measures(kinds: &[&str]) -> Vec<MeasureConfig> {
    kinds
        .iter()
        .map(|k| MeasureConfig {
            measure: "coherence".into(),
            distance: Some((*k).into()),
        })
        .collect()
}

/// Raw config for a builtin scenario, if the name is known.
pub fn builtin_config(name: &str) -> Option<ScenarioConfig> {
    match name {
        "fig1" => Some(fig1_config()),
        "fig2" => Some(fig2_config()),
        "fig3" => Some(fig3_config()),
        _ => None,
    }
}

/// Validated builtin scenario.
pub fn builtin(name: &str) -> Result<Scenario, ConfigError> {
    let config = builtin_config(name).ok_or_else(|| ConfigError {
        path: "<builtin>".into(),
        message: format!("unknown builtin '{name}'; available: fig1, fig2, fig3"),
    })?;
    validate(&config)
}

/// Two-qubit phase-damping sweep: 54 grid points spaced 2/J with
/// J = 215 Hz, covering 0 to ~0.49 s.
fn fig1_config() -> ScenarioConfig {
    let dt = 2.0 / 215.0;
    let steps = 53;
    let mut measures = coherence_measures(&["relative_entropy", "l1", "trace", "fidelity"]);
    for m in ["quantum", "classical", "total", "entanglement"] {
        measures.push(MeasureConfig {
            measure: m.into(),
            distance: None,
        });
    }
    ScenarioConfig {
        name: "fig1".into(),
        num_qubits: 2,
        initial: InitialConfig {
            triple: [1.0, 0.7, -0.7],
            perturbation_scale: None,
            replicates: None,
        },
        clock: ClockConfig {
            t2: vec![0.14, 0.90],
            t1: Some(vec![7.53, 12.46]),
            alpha: None,
        },
        noise: NoiseConfig::PdOnly,
        time_grid: GridConfig {
            start: 0.0,
            stop: dt * steps as f64,
            steps,
        },
        basis: 1,
        measures,
        output: OutputConfig {
            path: "fig1.csv".into(),
            format: OutputFormat::Csv,
        },
        seed: 0,
        retain_replicates: false,
    }
}

/// Two-qubit perturbed ensemble: twenty replicates at each of two
/// perturbation scales, tracked against the coherence floor of the shared
/// correlation triple.
fn fig2_config() -> ScenarioConfig {
    let mut measures = coherence_measures(&["relative_entropy", "l1", "trace", "fidelity"]);
    for k in ["relative_entropy", "l1", "trace", "fidelity"] {
        measures.push(MeasureConfig {
            measure: "floor".into(),
            distance: Some(k.into()),
        });
    }
    ScenarioConfig {
        name: "fig2".into(),
        num_qubits: 2,
        initial: InitialConfig {
            triple: [0.95, 0.62, -0.65],
            perturbation_scale: Some(ScaleSpec::Many(vec![0.04, 0.12])),
            replicates: Some(20),
        },
        clock: ClockConfig {
            t2: vec![0.14, 0.90],
            t1: Some(vec![7.53, 12.46]),
            alpha: None,
        },
        noise: NoiseConfig::PdOnly,
        time_grid: GridConfig {
            start: 0.0,
            stop: 0.5,
            steps: 25,
        },
        basis: 1,
        measures,
        output: OutputConfig {
            path: "fig2.csv".into(),
            format: OutputFormat::Csv,
        },
        seed: 20,
        retain_replicates: true,
    }
}

/// Four-qubit sweep with an effective collective correlator decay time of
/// 0.04 s, realized as per-qubit T2 = 0.16 s. The grid (0 to 0.12 s in 24
/// steps) covers three decay constants of the transversal correlators.
fn fig3_config() -> ScenarioConfig {
    ScenarioConfig {
        name: "fig3".into(),
        num_qubits: 4,
        initial: InitialConfig {
            triple: [1.0, 0.7, 0.7],
            perturbation_scale: None,
            replicates: None,
        },
        clock: ClockConfig {
            t2: vec![0.16; 4],
            t1: None,
            alpha: None,
        },
        noise: NoiseConfig::PdOnly,
        time_grid: GridConfig {
            start: 0.0,
            stop: 0.12,
            steps: 24,
        },
        basis: 1,
        measures: coherence_measures(&["relative_entropy", "l1", "trace"]),
        output: OutputConfig {
            path: "fig3.csv".into(),
            format: OutputFormat::Csv,
        },
        seed: 0,
        retain_replicates: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_NAMES {
            let s = builtin(name).unwrap();
            assert_eq!(s.name, name);
            assert!(s.grid.len() >= 2);
        }
        assert!(builtin("fig9").is_err());
    }

    #[test]
    fn fig1_grid_uses_coupling_increments() {
        let s = builtin("fig1").unwrap();
        assert_eq!(s.grid.len(), 54);
        let dt = s.grid[1] - s.grid[0];
        assert!((dt - 2.0 / 215.0).abs() < 1e-12);
        assert!((s.grid.last().unwrap() - 0.493).abs() < 1e-2);
    }
}
