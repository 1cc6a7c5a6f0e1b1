//! Measure-level oracles: closed forms against the numerical minimizer,
//! monotonicity under incoherent dynamics, the separable-set spot checks,
//! and the coherence lower bound.

mod common;

use cohsim_core::measures::{coherence_numeric_with, coherence_with};
use cohsim_core::theory::coherence_floor_with;
use cohsim_core::*;
use common::{random_physical_triple, rng};
use num_complex::Complex64;
use rand::Rng;

/// Closed-form coherence against the generic minimizer on 50 random BD
/// states, relative-entropy and trace kinds, within 1e-4.
#[test]
fn closed_form_vs_optimizer_on_bd_states() {
    let mut r = rng(11);
    let settings = OptimizerSettings::default();
    for i in 0..50 {
        let c = random_physical_triple(&mut r, 2, -1e-12);
        let rho = bd_state(&c);
        let axis = PauliAxis::from_index(r.random_range(1..4usize)).unwrap();
        for kind in [DistanceKind::RelativeEntropy, DistanceKind::Trace] {
            let closed = coherence_with(&rho, axis, kind, &settings).unwrap();
            let numeric =
                coherence_numeric_with(&rho, axis, kind, &settings.clone().with_seed(900 + i))
                    .unwrap();
            assert!(
                (closed.value - numeric.value).abs() <= 1e-4,
                "kind {kind:?}, axis {axis:?}: closed {} vs numeric {}",
                closed.value,
                numeric.value
            );
        }
    }
}

/// Flip-type dynamics is strictly incoherent with respect to every Pauli
/// product basis: coherence must not grow under it.
#[test]
fn coherence_monotone_under_flip_noise() {
    let mut r = rng(13);
    for i in 0..25 {
        let rho = if i % 2 == 0 {
            random_density(2, 6000 + i)
        } else {
            random_state_with_triple(
                &random_physical_triple(&mut r, 2, 2e-3),
                0.3,
                6000 + i,
            )
            .unwrap()
        };
        let flip_axis = PauliAxis::from_index(r.random_range(1..4usize)).unwrap();
        let q = r.random_range(0.0..1.0);
        let ch = flip_channel(flip_axis, q).unwrap();
        let out = apply_local(&rho, &[ch.clone(), ch]).unwrap();
        for basis in PauliAxis::ALL {
            for kind in [DistanceKind::RelativeEntropy, DistanceKind::L1] {
                let before = coherence(&rho, basis, kind).unwrap().value;
                let after = coherence(&out, basis, kind).unwrap().value;
                assert!(
                    after <= before + 1e-8,
                    "coherence grew under flip {flip_axis:?} in basis {basis:?} ({kind:?}): {before} -> {after}"
                );
            }
        }
    }
}

/// The BD-restricted entanglement minimizer is consistent with coarse
/// sampling of general separable states, and twirling a separable state
/// never increases its distance to the (twirl-invariant) BD input.
#[test]
fn entanglement_bd_restriction_spot_check() {
    let c = CorrelationTriple::new(1.0, 0.7, -0.7, 2).unwrap();
    let rho = bd_state(&c);
    let bd_value = entanglement_re_bd(&c).unwrap().value;
    assert!((bd_value - 0.39016).abs() < 1e-4);

    let mut r = rng(17);
    let mut best_sampled = f64::INFINITY;
    for i in 0..400 {
        // Random separable state: mixture of four random product states.
        let mut sigma = ComplexMatrix::zeros(4, 4);
        let mut weights = [0.0f64; 4];
        for w in weights.iter_mut() {
            *w = r.random_range(0.01..1.0);
        }
        let total: f64 = weights.iter().sum();
        for (k, w) in weights.iter().enumerate() {
            let a = random_density(1, 7000 + 8 * i + 2 * k as u64);
            let b = random_density(1, 7001 + 8 * i + 2 * k as u64);
            sigma = sigma.add(&a.matrix().kron(b.matrix()).scale_re(w / total));
        }
        let sigma = DensityMatrix::new(2, sigma).unwrap();
        if let Ok(d) = rho.rel_entropy(&sigma) {
            best_sampled = best_sampled.min(d);
            // Twirling argument, numerically: the twirl of sigma is
            // separable BD and at most as far from rho.
            let twirled = theta_map(&sigma).unwrap();
            let d_twirl = rho.rel_entropy(&twirled).unwrap();
            assert!(d_twirl <= d + 1e-9);
            assert!(
                triple_of(&twirled).unwrap().octahedron_norm() <= 1.0 + 1e-9,
                "twirled separable state left the octahedron"
            );
        }
    }
    assert!(
        best_sampled >= bd_value - 1e-9,
        "sampling found a separable state below the BD optimum: {best_sampled} < {bd_value}"
    );
}

/// Entanglement through the sweep crosses zero exactly at the sudden-death
/// time computed in closed form.
#[test]
fn entanglement_crosses_zero_at_sudden_death() {
    let c = CorrelationTriple::new(1.0, 0.7, -0.7, 2).unwrap();
    let clock = NoiseClock::new(vec![0.14, 0.90], None, None).unwrap();
    let gamma = clock.correlator_rate() / 2.0;
    let t_esd = esd_time(&c, gamma).unwrap().unwrap();
    let dt = 2.0 / 215.0;

    let before = evolve_triple(&c, &clock, PauliAxis::Z, t_esd - dt).unwrap();
    let e_before = entanglement_re_bd(&before).unwrap();
    assert!(e_before.value > 1e-6, "expected entanglement before ESD, got {}", e_before.value);

    let after = evolve_triple(&c, &clock, PauliAxis::Z, t_esd + dt).unwrap();
    let e_after = entanglement_re_bd(&after).unwrap();
    assert!(e_after.value < 1e-9, "expected zero after ESD, got {}", e_after.value);
}

/// The closest product state to a classical BD state is the maximally mixed
/// state: a direct search over product states cannot beat 2 - S(chi).
#[test]
fn classical_closest_product_is_maximally_mixed() {
    for c_val in [0.4, 0.7, 0.95] {
        let chi = bd_state(&CorrelationTriple::new(c_val, 0.0, 0.0, 2).unwrap());
        let closed = 2.0 - chi.vn_entropy();

        // Product states via two Bloch vectors mapped into the open ball.
        let objective = |p: &[f64]| {
            let qubit = |y: &[f64]| {
                let norm = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
                let scale = 1.0 / (1.0 + norm);
                let (x, yy, z) = (y[0] * scale, y[1] * scale, y[2] * scale);
                ComplexMatrix::new(
                    2,
                    2,
                    vec![
                        Complex64::new(0.5 * (1.0 + z), 0.0),
                        Complex64::new(0.5 * x, -0.5 * yy),
                        Complex64::new(0.5 * x, 0.5 * yy),
                        Complex64::new(0.5 * (1.0 - z), 0.0),
                    ],
                )
                .unwrap()
            };
            let pi = qubit(&p[..3]).kron(&qubit(&p[3..]));
            match DensityMatrix::new(2, pi) {
                Ok(pi) => chi.rel_entropy(&pi).unwrap_or(f64::INFINITY),
                Err(_) => f64::INFINITY,
            }
        };
        let outcome = cohsim_core::optim::minimize_multistart(
            &objective,
            6,
            &[vec![0.0; 6]],
            &OptimizerSettings::default(),
        );
        assert!(
            (outcome.value - closed).abs() <= 1e-5,
            "product search found {} vs closed {closed}",
            outcome.value
        );
    }
}

/// The general (non-BD) optimizer branch of the correlation measures: a
/// classical state hidden in a rotated product basis has zero quantum
/// correlations, and a perturbed state reports a valid classical closest
/// state.
#[test]
fn correlation_optimizer_handles_non_bd_inputs() {
    // Classical two-qubit state in a tilted product basis.
    let theta = 0.61;
    let basis = |t: f64| {
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(t.cos(), 0.0),
                Complex64::new(-t.sin(), 0.0),
                Complex64::new(t.sin(), 0.0),
                Complex64::new(t.cos(), 0.0),
            ],
        )
        .unwrap()
    };
    let w = basis(theta).kron(&basis(-0.37));
    let probs = [0.4, 0.3, 0.2, 0.1];
    let diag = ComplexMatrix::from_fn(4, 4, |r, c| {
        if r == c {
            Complex64::new(probs[r], 0.0)
        } else {
            Complex64::ZERO
        }
    });
    let chi = DensityMatrix::new(2, w.matmul(&diag).matmul(&w.adjoint())).unwrap();
    assert!(
        cohsim_core::measures::bd_form_of(&chi).is_none(),
        "test state must exercise the optimizer branch"
    );
    let q = quantum_correlations_re(&chi).unwrap();
    assert!(q.value <= 1e-5, "classical state scored Q = {}", q.value);

    // A perturbed state: Q positive, and the closest classical state is a
    // valid state that itself carries no quantum correlations.
    let c = CorrelationTriple::new(0.95, 0.62, -0.65, 2).unwrap();
    let rho = random_state_with_triple(&c, 0.1, 5).unwrap();
    let q = quantum_correlations_re(&rho).unwrap();
    assert!(q.value > 1e-4);
    let chi = q.closest_state.unwrap();
    let q_chi = quantum_correlations_re(&chi).unwrap();
    assert!(q_chi.value <= 1e-5, "closest classical state has Q = {}", q_chi.value);

    let p = classical_correlations_re(&rho).unwrap();
    assert!(p.value >= 0.0);
    // Its closest state is a product state: total correlations vanish.
    let pi = p.closest_state.unwrap();
    assert!(total_correlations_re(&pi).unwrap().value <= 1e-9);
}

/// Reported closest states live in their target sets: incoherent results
/// are diagonal in the reference basis, entanglement results inside the
/// separable octahedron.
#[test]
fn closest_states_belong_to_their_target_sets() {
    let mut r = rng(19);
    let settings = OptimizerSettings::default();
    for i in 0..10 {
        let rho = random_density(2, 8500 + i);
        for kind in [DistanceKind::RelativeEntropy, DistanceKind::Trace, DistanceKind::Fidelity] {
            for axis in PauliAxis::ALL {
                let result = coherence_with(&rho, axis, kind, &settings).unwrap();
                let delta = result.closest_state.expect("state distances report minimizers");
                // Membership: no coherence left in the reference basis.
                let residue = coherence(&delta, axis, DistanceKind::L1).unwrap().value;
                assert!(residue <= 1e-8, "closest state retains coherence {residue}");
                // And the reported value is indeed the distance to it.
                let d = match kind {
                    DistanceKind::RelativeEntropy => rho.rel_entropy(&delta).unwrap(),
                    DistanceKind::Trace => rho.trace_distance(&delta).unwrap(),
                    DistanceKind::Fidelity => 1.0 - rho.fidelity(&delta).unwrap(),
                    DistanceKind::L1 => unreachable!(),
                };
                assert!((d - result.value).abs() <= 1e-6);
            }
        }
    }
    for _ in 0..10 {
        let c = random_physical_triple(&mut r, 2, -1e-12);
        let e = entanglement_re_bd(&c).unwrap();
        let sigma = triple_of(&e.closest_state.unwrap()).unwrap();
        assert!(sigma.octahedron_norm() <= 1.0 + 1e-8);
    }
}

/// Coherence of any state dominates the coherence of the BD state sharing
/// its correlation triple, for every distance kind, at time zero and along
/// a phase-damping sweep.
#[test]
fn coherence_floor_lower_bounds_all_kinds() {
    let mut r = rng(23);
    let settings = OptimizerSettings::default();
    let mut states = Vec::new();
    for i in 0..100u64 {
        let rho = if i % 2 == 0 {
            random_density(2, 8000 + i)
        } else {
            let c = random_physical_triple(&mut r, 2, 2e-3);
            random_state_with_triple(&c, r.random_range(0.02..0.5), 8000 + i).unwrap()
        };
        states.push(rho);
    }
    for (i, rho) in states.iter().enumerate() {
        for kind in DistanceKind::ALL {
            let own = coherence_with(rho, PauliAxis::X, kind, &settings).unwrap().value;
            let floor = coherence_floor_with(rho, PauliAxis::X, kind, &settings)
                .unwrap()
                .value;
            assert!(
                own >= floor - 1e-8,
                "state {i}: {kind:?} coherence {own} below floor {floor}"
            );
        }
    }

    // Sweep version for a subset.
    let clock = NoiseClock::new(vec![0.14, 0.90], None, None).unwrap();
    for (i, rho0) in states.iter().take(10).enumerate() {
        for step in 0..6 {
            let t = 0.1 * step as f64;
            let channels: Vec<KrausChannel> = (0..2)
                .map(|q| phase_damping(clock.damping_q(q, t)).unwrap())
                .collect();
            let rho = apply_local(rho0, &channels).unwrap();
            for kind in DistanceKind::ALL {
                let own = coherence_with(&rho, PauliAxis::X, kind, &settings).unwrap().value;
                let floor = coherence_floor_with(&rho, PauliAxis::X, kind, &settings)
                    .unwrap()
                    .value;
                assert!(
                    own >= floor - 1e-8,
                    "sweep state {i} at t={t}: {kind:?} {own} below floor {floor}"
                );
            }
        }
    }
}
