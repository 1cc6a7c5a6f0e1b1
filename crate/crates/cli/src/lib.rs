//! Scenario-driven sweep runner over the open-system simulation core:
//! config parsing and validation, bundled example scenarios, parallel
//! execution, and deterministic tabular export.

pub mod config;
pub mod export;
pub mod runner;
pub mod scenario;

pub use config::{parse_config, validate, ConfigError, Scenario, ScenarioConfig};
pub use export::{export, format_sig, sidecar_path};
pub use runner::{run_scenario, ReplicateSeries, RunError, RunOutput, SweepRecord};
pub use scenario::{builtin, builtin_config, BUILTIN_NAMES};
