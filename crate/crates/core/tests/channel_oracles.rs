//! Kraus-engine oracles: the analytic triple evolution against the tensor
//! Kraus sum, spectral identities, and the contractivity of the distances.

mod common;

use cohsim_core::eigen::{eigh, eigvalsh};
use cohsim_core::*;
use common::{max_component_diff, random_channel, random_physical_triple, rng};
use rand::Rng;

/// Analytic BD spectrum against the brute-force eigensolver, two and four
/// qubits. This pins the sign-triple constraint s1 s2 s3 = (-1)^{N/2}.
#[test]
fn bd_spectrum_matches_brute_force() {
    for (n, cases, seed) in [(2usize, 100usize, 101u64), (4, 30, 102)] {
        let mut r = rng(seed);
        for _ in 0..cases {
            let c = random_physical_triple(&mut r, n, -1e-12);
            let mut analytic: Vec<f64> = bd_eigenvalues(&c)
                .into_iter()
                .flat_map(|(l, m)| std::iter::repeat_n(l, m))
                .collect();
            analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let numeric = eigvalsh(bd_state(&c).matrix()).unwrap();
            assert_eq!(analytic.len(), numeric.len());
            for (a, b) in analytic.iter().zip(&numeric) {
                assert!(
                    (a - b).abs() <= 1e-10,
                    "spectrum mismatch at n={n}: {a} vs {b} for {:?}",
                    c.components()
                );
            }
        }
    }
}

/// evolve_triple must agree with triple_of(apply_local(..)) componentwise to
/// 1e-10: 200 randomized cases at two qubits, 50 at four.
#[test]
fn analytic_evolution_matches_kraus_engine() {
    for (n, cases, seed) in [(2usize, 200usize, 7u64), (4, 50, 8)] {
        let mut r = rng(seed);
        for _ in 0..cases {
            let c0 = random_physical_triple(&mut r, n, -1e-12);
            let t2: Vec<f64> = (0..n).map(|_| r.random_range(0.05..2.0)).collect();
            let clock = NoiseClock::new(t2, None, None).unwrap();
            let t = r.random_range(0.0..1.0);
            let axis = PauliAxis::from_index(r.random_range(1..4usize)).unwrap();

            let analytic = evolve_triple(&c0, &clock, axis, t).unwrap();

            let channels: Vec<KrausChannel> = (0..n)
                .map(|q| flip_channel(axis, clock.damping_q(q, t)).unwrap())
                .collect();
            let evolved = apply_local(&bd_state(&c0), &channels).unwrap();
            let kraus = triple_of(&evolved).unwrap();

            assert!(
                max_component_diff(&analytic, &kraus) <= 1e-10,
                "mismatch at n={n}, t={t}, axis={axis:?}"
            );
        }
    }
}

/// Flip noise keeps BD states in BD form: the evolved state coincides with
/// the BD state rebuilt from its own triple.
#[test]
fn flip_noise_preserves_bd_form() {
    let mut r = rng(21);
    for _ in 0..40 {
        let c0 = random_physical_triple(&mut r, 2, -1e-12);
        let axis = PauliAxis::from_index(r.random_range(1..4usize)).unwrap();
        let q = r.random_range(0.0..1.0);
        let ch = flip_channel(axis, q).unwrap();
        let evolved = apply_local(&bd_state(&c0), &[ch.clone(), ch]).unwrap();
        let rebuilt = bd_state(&triple_of(&evolved).unwrap());
        assert!(evolved.trace_distance(&rebuilt).unwrap() <= 1e-10);
    }
}

/// Applying flip noise for t1 then t2 equals applying it for t1 + t2.
#[test]
fn markov_composition() {
    let mut r = rng(31);
    for _ in 0..25 {
        let c0 = random_physical_triple(&mut r, 2, -1e-12);
        let clock = NoiseClock::new(vec![0.14, 0.90], None, None).unwrap();
        let (t1, t2) = (r.random_range(0.0..0.4), r.random_range(0.0..0.4));
        let axis = PauliAxis::from_index(r.random_range(1..4usize)).unwrap();

        let step = |rho: &DensityMatrix, dt: f64| {
            let channels: Vec<KrausChannel> = (0..2)
                .map(|q| flip_channel(axis, clock.damping_q(q, dt)).unwrap())
                .collect();
            apply_local(rho, &channels).unwrap()
        };
        let rho0 = bd_state(&c0);
        let two_steps = step(&step(&rho0, t1), t2);
        let one_step = step(&rho0, t1 + t2);
        assert!(two_steps.matrix().max_abs_diff(one_step.matrix()) <= 1e-10);
    }
}

/// Every channel built here is trace preserving and Hermiticity preserving
/// at the output state level.
#[test]
fn channels_preserve_state_invariants() {
    let mut r = rng(41);
    for i in 0..30 {
        let rho = random_density(2, 1000 + i);
        let channels = vec![random_channel(&mut r), random_channel(&mut r)];
        for ch in &channels {
            assert!(ch.completeness_deviation() <= 1e-10);
        }
        let out = apply_local(&rho, &channels).unwrap();
        assert!((out.matrix().trace().re - 1.0).abs() <= 1e-10);
        assert!(out.matrix().hermitian_deviation() <= 1e-10);
    }
}

/// Trace distance and relative entropy contract under every channel pair
/// built in this crate.
#[test]
fn distances_contract_under_channels() {
    let mut r = rng(51);
    for i in 0..30 {
        let rho = random_density(2, 2000 + 2 * i);
        let tau = random_density(2, 2001 + 2 * i);
        let channels = vec![random_channel(&mut r), random_channel(&mut r)];
        let rho2 = apply_local(&rho, &channels).unwrap();
        let tau2 = apply_local(&tau, &channels).unwrap();

        let d_before = rho.trace_distance(&tau).unwrap();
        let d_after = rho2.trace_distance(&tau2).unwrap();
        assert!(d_after <= d_before + 1e-9, "trace distance grew: {d_before} -> {d_after}");

        // Ginibre states are full rank, so the relative entropies are finite.
        let s_before = rho.rel_entropy(&tau).unwrap();
        let s_after = rho2.rel_entropy(&tau2).unwrap();
        assert!(s_after <= s_before + 1e-9, "relative entropy grew: {s_before} -> {s_after}");
    }
}

/// All three state distances are invariant under a shared unitary
/// conjugation.
#[test]
fn distances_are_unitarily_invariant() {
    let mut r = rng(61);
    for i in 0..15 {
        let rho = random_density(2, 3000 + 2 * i);
        let tau = random_density(2, 3001 + 2 * i);
        // Random unitary from the spectral factors of a random Hermitian.
        let h = {
            let g = random_density(2, 4000 + i);
            g.matrix().scale_re(r.random_range(0.5..3.0))
        };
        let u = eigh(&h).unwrap().vectors;
        assert!(u.is_unitary(1e-10));

        let conj = |m: &DensityMatrix| {
            DensityMatrix::new(2, m.matrix().conjugate_by(&u)).unwrap()
        };
        let (rho_u, tau_u) = (conj(&rho), conj(&tau));

        assert!(
            (rho.trace_distance(&tau).unwrap() - rho_u.trace_distance(&tau_u).unwrap()).abs()
                <= 1e-10
        );
        assert!((rho.fidelity(&tau).unwrap() - rho_u.fidelity(&tau_u).unwrap()).abs() <= 1e-10);
        assert!(
            (rho.rel_entropy(&tau).unwrap() - rho_u.rel_entropy(&tau_u).unwrap()).abs() <= 1e-9
        );
    }
}

/// Fidelity is symmetric and reduces to (sum sqrt(lambda mu))^2 on
/// commuting pairs.
#[test]
fn fidelity_symmetry_and_commuting_formula() {
    let mut r = rng(71);
    for i in 0..20 {
        let rho = random_density(2, 5000 + 2 * i);
        let tau = random_density(2, 5001 + 2 * i);
        let f1 = rho.fidelity(&tau).unwrap();
        let f2 = tau.fidelity(&rho).unwrap();
        assert!((f1 - f2).abs() <= 1e-12, "fidelity asymmetric: {f1} vs {f2}");
    }

    // Commuting BD pair.
    for _ in 0..20 {
        let a = random_physical_triple(&mut r, 2, -1e-12);
        let b = random_physical_triple(&mut r, 2, -1e-12);
        let f = bd_state(&a).fidelity(&bd_state(&b)).unwrap();
        let expected: f64 = bd_eigenvalues(&a)
            .iter()
            .zip(bd_eigenvalues(&b).iter())
            .map(|((la, _), (lb, _))| (la.max(0.0) * lb.max(0.0)).sqrt())
            .sum::<f64>()
            .powi(2);
        assert!((f - expected).abs() <= 1e-9, "commuting fidelity {f} vs {expected}");
    }
}

/// Spectral reconstruction stays at eigensolver precision for the matrix
/// shapes this crate actually produces, up to dimension 16.
#[test]
fn eigendecomposition_reconstructs_artifact_matrices() {
    let mut mats = Vec::new();
    let mut r = rng(81);
    mats.push(bd_state(&random_physical_triple(&mut r, 2, -1e-12)).matrix().clone());
    mats.push(bd_state(&random_physical_triple(&mut r, 4, -1e-12)).matrix().clone());
    mats.push(random_density(4, 99).matrix().clone());
    let evolved = apply_local(
        &bd_state(&CorrelationTriple::new(1.0, 0.7, 0.7, 4).unwrap()),
        &vec![phase_damping(0.3).unwrap(); 4],
    )
    .unwrap();
    mats.push(evolved.matrix().clone());
    mats.push(theta_map(&random_density(4, 123)).unwrap().matrix().clone());

    for m in &mats {
        let eig = eigh(m).unwrap();
        assert!(eig.reconstruct().max_abs_diff(m) <= 1e-10);
    }
}
