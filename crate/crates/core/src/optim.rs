//! Derivative-free minimization used to cross-validate the closed-form
//! measure expressions and to handle states without a fast path.
//!
//! The search is a plain Nelder-Mead simplex over an unconstrained
//! parameterization, restarted from a set of caller-provided seed points plus
//! deterministic random starts. Problem dimensions here are at most 16, where
//! this is hard to beat for robustness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Knobs for the multistart simplex search.
#[derive(Clone, Debug)]
pub struct OptimizerSettings {
    /// Total number of starts, counting the provided seed points first.
    pub restarts: usize,
    /// A restart stops once the best value improves by less than
    /// `stall_tol` over `stall_window` consecutive iterations.
    pub stall_window: usize,
    pub stall_tol: f64,
    /// Hard per-restart iteration cap; hitting it marks non-convergence.
    pub max_iters: usize,
    /// Spread of the initial simplex and of random start points.
    pub initial_step: f64,
    /// Seed for the deterministic random starts.
    pub seed: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            restarts: 16,
            stall_window: 200,
            stall_tol: 1e-9,
            max_iters: 20_000,
            initial_step: 0.5,
            seed: 0x5EED,
        }
    }
}

impl OptimizerSettings {
    /// Cheaper profile for large parameterizations where a good seed point
    /// is already known.
    pub fn reduced(restarts: usize) -> Self {
        Self {
            restarts,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug)]
pub struct OptimOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    /// True when the restart that produced the best value stalled out
    /// (improvement below tolerance) rather than hitting the iteration cap.
    pub converged: bool,
    pub evaluations: usize,
}

/// Minimize `f` over R^dim from every seed point plus random starts.
pub fn minimize_multistart(
    f: &dyn Fn(&[f64]) -> f64,
    dim: usize,
    seeds: &[Vec<f64>],
    settings: &OptimizerSettings,
) -> OptimOutcome {
    assert!(dim > 0);
    let mut rng = ChaCha12Rng::seed_from_u64(settings.seed);
    let n_starts = settings.restarts.max(seeds.len()).max(1);

    let mut best: Option<OptimOutcome> = None;
    let mut total_evals = 0usize;
    for start_idx in 0..n_starts {
        let x0: Vec<f64> = if start_idx < seeds.len() {
            let s = &seeds[start_idx];
            assert_eq!(s.len(), dim, "seed dimension mismatch");
            s.clone()
        } else {
            (0..dim)
                .map(|_| rng.random_range(-2.0 * settings.initial_step..2.0 * settings.initial_step))
                .collect()
        };
        let mut run = nelder_mead(f, &x0, settings);
        total_evals += run.evaluations;
        run.evaluations = total_evals;
        best = match best {
            None => Some(run),
            Some(prev) if run.value < prev.value => Some(run),
            Some(prev) => Some(OptimOutcome {
                evaluations: total_evals,
                ..prev
            }),
        };
    }
    best.unwrap()
}

fn nelder_mead(f: &dyn Fn(&[f64]) -> f64, x0: &[f64], settings: &OptimizerSettings) -> OptimOutcome {
    let dim = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut evals = 0usize;
    let mut eval = |x: &[f64]| {
        evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = eval(x0);
    simplex.push((x0.to_vec(), v0));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += settings.initial_step;
        let v = eval(&x);
        simplex.push((x, v));
    }

    let mut stall_best = f64::INFINITY;
    let mut stall_count = 0usize;
    let mut converged = false;

    for _iter in 0..settings.max_iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let best_val = simplex[0].1;
        if stall_best - best_val < settings.stall_tol {
            stall_count += 1;
            if stall_count >= settings.stall_window {
                converged = true;
                break;
            }
        } else {
            stall_best = best_val;
            stall_count = 0;
        }

        // Centroid of all but the worst point.
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let worst = simplex[dim].clone();

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + alpha * (c - w))
            .collect();
        let fr = eval(&reflect);

        if fr < simplex[0].1 {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&reflect)
                .map(|(c, r)| c + gamma * (r - c))
                .collect();
            let fe = eval(&expand);
            simplex[dim] = if fe < fr { (expand, fe) } else { (reflect, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflect, fr);
            continue;
        }
        let contract: Vec<f64> = centroid
            .iter()
            .zip(&worst.0)
            .map(|(c, w)| c + rho * (w - c))
            .collect();
        let fc = eval(&contract);
        if fc < worst.1 {
            simplex[dim] = (contract, fc);
            continue;
        }
        // Shrink toward the best vertex.
        let best_point = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = best_point
                .iter()
                .zip(&entry.0)
                .map(|(b, x)| b + sigma * (x - b))
                .collect();
            let v = eval(&x);
            *entry = (x, v);
        }
    }

    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    OptimOutcome {
        point: simplex[0].0.clone(),
        value: simplex[0].1,
        converged,
        evaluations: evals,
    }
}

/// Numerically stable softmax onto the probability simplex.
pub fn softmax(z: &[f64]) -> Vec<f64> {
    let max = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|&x| (x - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Left inverse of [`softmax`] up to the usual additive gauge; maps weights
/// back to logits so known candidates can be used as starts.
pub fn softmax_logits(w: &[f64]) -> Vec<f64> {
    w.iter().map(|&x| (x.max(1e-300)).ln()).collect()
}
