//! Shared helpers for the oracle suites.
#![allow(dead_code)]

use cohsim_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Seeded sampler of physical correlation triples; rejection-samples the
/// cube until the analytic spectrum clears `margin`.
pub fn random_physical_triple(
    rng: &mut ChaCha12Rng,
    num_qubits: usize,
    margin: f64,
) -> CorrelationTriple {
    loop {
        let c1 = rng.random_range(-1.0..1.0);
        let c2 = rng.random_range(-1.0..1.0);
        let c3 = rng.random_range(-1.0..1.0);
        if let Ok(c) = CorrelationTriple::new(c1, c2, c3, num_qubits) {
            if c.min_eigenvalue() >= margin {
                return c;
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// A random single-qubit channel drawn among the families built here.
pub fn random_channel(rng: &mut ChaCha12Rng) -> KrausChannel {
    match rng.random_range(0..3u8) {
        0 => phase_damping(rng.random_range(0.0..1.0)).unwrap(),
        1 => {
            let axis = PauliAxis::from_index(rng.random_range(1..4usize)).unwrap();
            flip_channel(axis, rng.random_range(0.0..1.0)).unwrap()
        }
        _ => gad(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)).unwrap(),
    }
}

pub fn max_component_diff(a: &CorrelationTriple, b: &CorrelationTriple) -> f64 {
    a.components()
        .iter()
        .zip(b.components())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
