//! Multiqubit open-system simulation at desk scale: dense density matrices,
//! local Kraus noise channels, and the resource-theory measures (coherence,
//! discord-type correlations, entanglement) needed to follow their dynamics.
//!
//! All entropic quantities are in bits (base-2 logarithms); the trace
//! distance is normalized to twice the conventional one, ranging over
//! [0, 2].

pub mod channels;
pub mod density;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod optim;
pub mod pauli;
pub mod states;
pub mod theory;

pub use channels::{apply_local, evolve_triple, flip_channel, gad, phase_damping, KrausChannel, NoiseClock};
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use measures::{
    classical_correlations_re, coherence, coherence_numeric, dephase, entanglement_re_bd,
    global_discord_m3n, quantum_correlations_re, total_correlations_re, DistanceKind,
    MeasureResult, OptimizerStatus,
};
pub use optim::OptimizerSettings;
pub use pauli::PauliAxis;
pub use states::{
    bd_eigenvalues, bd_state, random_density, random_state_with_triple, triple_of,
    CorrelationTriple,
};
pub use theory::{
    coherence_floor, esd_time, freezing_check, incoherent_op_check, switch_time, theta_map,
    theta_unitaries, FreezingPermutation,
};
