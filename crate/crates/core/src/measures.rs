//! Distance-based coherence quantifiers and correlation measures.
//!
//! Coherence is the distance from a state to the set of states diagonal in a
//! Pauli product eigenbasis; correlations are distances to the classical,
//! product and separable sets. Correlation states (BD form) admit closed
//! forms for most of these; everything else goes through the derivative-free
//! minimizer, which is also used to cross-validate the closed forms.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::eigen::{eigvalsh, sqrtm_psd};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::optim::{minimize_multistart, softmax, softmax_logits, OptimOutcome, OptimizerSettings};
use crate::pauli::{product_basis_rotation, PauliAxis};
use crate::states::{allowed_sign_triples, bd_eigenvalues, bd_state, triple_of, CorrelationTriple};

/// Distance functional used inside a measure. `L1` is the entrywise
/// off-diagonal norm and applies to coherence only; it is not a distance
/// between arbitrary states.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    RelativeEntropy,
    Trace,
    Fidelity,
    L1,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 4] = [
        DistanceKind::RelativeEntropy,
        DistanceKind::Trace,
        DistanceKind::Fidelity,
        DistanceKind::L1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            DistanceKind::RelativeEntropy => "re",
            DistanceKind::Trace => "tr",
            DistanceKind::Fidelity => "fid",
            DistanceKind::L1 => "l1",
        }
    }
}

/// How a measure value was obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OptimizerStatus {
    /// Closed-form evaluation, no search involved.
    ClosedForm,
    /// The multistart search stalled below tolerance.
    Converged,
    /// Iteration cap hit; the value is the best upper bound found.
    MaxIter,
}

impl OptimizerStatus {
    pub fn id(self) -> &'static str {
        match self {
            OptimizerStatus::ClosedForm => "closed_form",
            OptimizerStatus::Converged => "converged",
            OptimizerStatus::MaxIter => "max_iter",
        }
    }

    fn from_outcome(outcome: &OptimOutcome) -> Self {
        if outcome.converged {
            OptimizerStatus::Converged
        } else {
            OptimizerStatus::MaxIter
        }
    }
}

/// A measure value together with its provenance and, when available, the
/// minimizing state of the target set.
#[derive(Clone, Debug)]
pub struct MeasureResult {
    pub value: f64,
    pub status: OptimizerStatus,
    pub closest_state: Option<DensityMatrix>,
}

impl MeasureResult {
    fn closed(value: f64, closest: Option<DensityMatrix>) -> Self {
        Self {
            value: sanitize(value),
            status: OptimizerStatus::ClosedForm,
            closest_state: closest,
        }
    }
}

/// Clamp the round-off band [-1e-9, 0) to zero; anything more negative is a
/// logic error upstream.
fn sanitize(value: f64) -> f64 {
    debug_assert!(value >= -1e-9, "measure value {value} below tolerance");
    if value < 0.0 {
        0.0
    } else {
        value
    }
}

/// Tolerance for recognizing a state as being exactly of correlation (BD)
/// form, which unlocks the closed-form fast paths.
const BD_FORM_TOL: f64 = 1e-10;

/// The correlation triple of `rho` if `rho` is (numerically) a BD-form
/// state, `None` otherwise.
pub fn bd_form_of(rho: &DensityMatrix) -> Option<CorrelationTriple> {
    if !rho.num_qubits().is_multiple_of(2) {
        return None;
    }
    let triple = triple_of(rho).ok()?;
    let candidate = bd_state(&triple);
    if rho.matrix().max_abs_diff(candidate.matrix()) <= BD_FORM_TOL {
        Some(triple)
    } else {
        None
    }
}

/// Remove all coherence in the sigma_axis product eigenbasis: express the
/// state in that basis, zero the off-diagonal entries, rotate back.
pub fn dephase(rho: &DensityMatrix, axis: PauliAxis) -> DensityMatrix {
    let n = rho.num_qubits();
    let w = product_basis_rotation(axis, n);
    let rotated = w.adjoint().matmul(rho.matrix()).matmul(&w);
    let dim = rho.dim();
    let diag = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new(rotated[(r, r)].re, 0.0)
        } else {
            Complex64::ZERO
        }
    });
    let back = w.matmul(&diag).matmul(&w.adjoint());
    DensityMatrix::new(n, back).expect("dephasing preserves state validity")
}

/// Diagonal weights of `rho` in the basis given by the columns of `w`.
fn diagonal_weights(rho: &DensityMatrix, w: &ComplexMatrix) -> Vec<f64> {
    let rotated = w.adjoint().matmul(rho.matrix()).matmul(w);
    (0..rho.dim()).map(|i| rotated[(i, i)].re.max(0.0)).collect()
}

/// Diagonal state with the given weights in the basis `w`.
fn diagonal_state(w: &ComplexMatrix, weights: &[f64]) -> ComplexMatrix {
    let dim = weights.len();
    let diag = ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new(weights[r], 0.0)
        } else {
            Complex64::ZERO
        }
    });
    w.matmul(&diag).matmul(&w.adjoint())
}

/// Coherence of `rho` in the sigma_axis product basis under the requested
/// distance, with default optimizer settings.
pub fn coherence(rho: &DensityMatrix, axis: PauliAxis, kind: DistanceKind) -> Result<MeasureResult> {
    coherence_with(rho, axis, kind, &OptimizerSettings::default())
}

pub fn coherence_with(
    rho: &DensityMatrix,
    axis: PauliAxis,
    kind: DistanceKind,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let n = rho.num_qubits();
    let w = product_basis_rotation(axis, n);

    match kind {
        DistanceKind::RelativeEntropy => {
            // The dephased state is the exact minimizer.
            let delta = dephase(rho, axis);
            let value = delta.vn_entropy() - rho.vn_entropy();
            Ok(MeasureResult::closed(value, Some(delta)))
        }
        DistanceKind::L1 => {
            let rotated = w.adjoint().matmul(rho.matrix()).matmul(&w);
            let mut sum = 0.0;
            for r in 0..rho.dim() {
                for c in 0..rho.dim() {
                    if r != c {
                        sum += rotated[(r, c)].norm();
                    }
                }
            }
            Ok(MeasureResult::closed(sum, None))
        }
        DistanceKind::Trace => {
            if let Some(triple) = bd_form_of(rho) {
                // For BD-form states the trace distance of coherence equals
                // the l1 norm, max of the two transversal correlators, and
                // the axis projection attains it.
                let (a, b) = axis.others();
                let value = triple.component(a).abs().max(triple.component(b).abs());
                let closest = bd_state(&triple.project_onto(axis));
                return Ok(MeasureResult::closed(value, Some(closest)));
            }
            numeric_trace(rho, axis, settings)
        }
        DistanceKind::Fidelity => numeric_fidelity(rho, axis, settings),
    }
}

/// Coherence through the numerical minimizer regardless of any available
/// fast path; used to cross-validate the closed forms. For `L1` the closed
/// computation is returned as is, since that norm has no variational form.
pub fn coherence_numeric(
    rho: &DensityMatrix,
    axis: PauliAxis,
    kind: DistanceKind,
) -> Result<MeasureResult> {
    coherence_numeric_with(rho, axis, kind, &OptimizerSettings::default())
}

pub fn coherence_numeric_with(
    rho: &DensityMatrix,
    axis: PauliAxis,
    kind: DistanceKind,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    match kind {
        DistanceKind::L1 => coherence_with(rho, axis, DistanceKind::L1, settings),
        DistanceKind::RelativeEntropy => numeric_rel_entropy(rho, axis, settings),
        DistanceKind::Trace => numeric_trace(rho, axis, settings),
        DistanceKind::Fidelity => numeric_fidelity(rho, axis, settings),
    }
}

/// Minimize S(rho || delta) over basis-diagonal states delta. For diagonal
/// delta the cross term needs only the diagonal weights of rho, so the
/// objective is a few logs per evaluation.
fn numeric_rel_entropy(
    rho: &DensityMatrix,
    axis: PauliAxis,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let n = rho.num_qubits();
    let w = product_basis_rotation(axis, n);
    let d = diagonal_weights(rho, &w);
    let s_rho = rho.vn_entropy();
    let objective = {
        let d = d.clone();
        move |z: &[f64]| {
            let weights = softmax(z);
            let mut cross = 0.0;
            for (dk, wk) in d.iter().zip(&weights) {
                if *dk > 0.0 {
                    cross -= dk * wk.max(1e-300).log2();
                }
            }
            cross - s_rho
        }
    };
    let seeds = vec![softmax_logits(&d)];
    let outcome = minimize_multistart(&objective, rho.dim(), &seeds, settings);
    let weights = softmax(&outcome.point);
    let closest = DensityMatrix::new(n, diagonal_state(&w, &weights))?;
    Ok(MeasureResult {
        value: sanitize(outcome.value),
        status: OptimizerStatus::from_outcome(&outcome),
        closest_state: Some(closest),
    })
}

fn numeric_trace(
    rho: &DensityMatrix,
    axis: PauliAxis,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let n = rho.num_qubits();
    let w = product_basis_rotation(axis, n);
    let objective = {
        let w = w.clone();
        let rho_m = rho.matrix().clone();
        move |z: &[f64]| {
            let weights = softmax(z);
            let delta = diagonal_state(&w, &weights);
            eigvalsh(&rho_m.sub(&delta))
                .map(|ls| ls.iter().map(|l| l.abs()).sum())
                .unwrap_or(f64::INFINITY)
        }
    };
    let mut seeds = vec![softmax_logits(&diagonal_weights(rho, &w))];
    if let Some(triple) = bd_form_of(rho) {
        let proj = bd_state(&triple.project_onto(axis));
        seeds.push(softmax_logits(&diagonal_weights(&proj, &w)));
    }
    let outcome = minimize_multistart(&objective, rho.dim(), &seeds, settings);
    let weights = softmax(&outcome.point);
    let closest = DensityMatrix::new(n, diagonal_state(&w, &weights))?;
    Ok(MeasureResult {
        value: sanitize(outcome.value),
        status: OptimizerStatus::from_outcome(&outcome),
        closest_state: Some(closest),
    })
}

/// Minimize 1 - F over basis-diagonal states. No closed form is known for
/// this kind; the dephased weights and, for BD-form inputs, the axis
/// projection seed the search.
fn numeric_fidelity(
    rho: &DensityMatrix,
    axis: PauliAxis,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let n = rho.num_qubits();
    let w = product_basis_rotation(axis, n);
    let root = sqrtm_psd(rho.matrix())?;
    let objective = {
        // sqrt(rho) delta sqrt(rho) = B diag(weights) B^dag with B = sqrt(rho) W.
        let b = root.matmul(&w);
        move |z: &[f64]| {
            let weights = softmax(z);
            let m = b.matmul(&diagonal_state_plain(&weights)).matmul(&b.adjoint());
            match eigvalsh(&m) {
                Ok(ls) => {
                    let tr: f64 = ls.iter().map(|l| l.max(0.0).sqrt()).sum();
                    1.0 - tr * tr
                }
                Err(_) => f64::INFINITY,
            }
        }
    };
    let mut seeds = vec![softmax_logits(&diagonal_weights(rho, &w))];
    if let Some(triple) = bd_form_of(rho) {
        let proj = bd_state(&triple.project_onto(axis));
        seeds.push(softmax_logits(&diagonal_weights(&proj, &w)));
    }
    let outcome = minimize_multistart(&objective, rho.dim(), &seeds, settings);
    let weights = softmax(&outcome.point);
    let closest = DensityMatrix::new(n, diagonal_state(&w, &weights))?;
    Ok(MeasureResult {
        value: sanitize(outcome.value),
        status: OptimizerStatus::from_outcome(&outcome),
        closest_state: Some(closest),
    })
}

fn diagonal_state_plain(weights: &[f64]) -> ComplexMatrix {
    let dim = weights.len();
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new(weights[r], 0.0)
        } else {
            Complex64::ZERO
        }
    })
}

/// Closest incoherent BD state in the sigma_axis basis: the Euclidean
/// projection of the triple onto that correlation axis.
pub fn closest_incoherent_bd(c: &CorrelationTriple, axis: PauliAxis) -> CorrelationTriple {
    c.project_onto(axis)
}

/// Relative-entropy quantum correlations (discord-type) of a two-qubit
/// state: distance to the closest classical state.
pub fn quantum_correlations_re(rho: &DensityMatrix) -> Result<MeasureResult> {
    quantum_correlations_re_with(rho, &OptimizerSettings::default())
}

pub fn quantum_correlations_re_with(
    rho: &DensityMatrix,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    require_two_qubits(rho)?;
    if let Some(triple) = bd_form_of(rho) {
        let axis = dominant_axis(&triple);
        let chi = bd_state(&triple.project_onto(axis));
        let value = rho.rel_entropy(&chi)?;
        return Ok(MeasureResult::closed(value, Some(chi)));
    }

    // General two-qubit input: search over local product bases; for fixed
    // bases the optimal joint probabilities are the diagonal weights of rho,
    // so only the four basis angles are free parameters.
    let s_rho = rho.vn_entropy();
    let rho_m = rho.matrix().clone();
    let objective = move |angles: &[f64]| {
        let w = product_basis_from_angles(angles);
        let rotated = w.adjoint().matmul(&rho_m).matmul(&w);
        let mut h = 0.0;
        for i in 0..4 {
            let q = rotated[(i, i)].re.max(0.0);
            if q > 0.0 {
                h -= q * q.log2();
            }
        }
        h
    };
    // Seeds covering the three canonical product bases.
    let quarter = std::f64::consts::FRAC_PI_4;
    let half = std::f64::consts::FRAC_PI_2;
    let seeds = vec![
        vec![0.0, 0.0, 0.0, 0.0],
        vec![quarter, 0.0, quarter, 0.0],
        vec![quarter, half, quarter, half],
    ];
    let outcome = minimize_multistart(&objective, 4, &seeds, settings);
    let w = product_basis_from_angles(&outcome.point);
    let weights = diagonal_weights(rho, &w);
    let chi = DensityMatrix::new(2, diagonal_state(&w, &weights))?;
    Ok(MeasureResult {
        value: sanitize(outcome.value - s_rho),
        status: OptimizerStatus::from_outcome(&outcome),
        closest_state: Some(chi),
    })
}

/// Axis with the largest |c| component; ties break toward z, then x.
fn dominant_axis(c: &CorrelationTriple) -> PauliAxis {
    let mut best = PauliAxis::Z;
    let mut best_abs = c.component(PauliAxis::Z).abs();
    for axis in [PauliAxis::X, PauliAxis::Y] {
        let a = c.component(axis).abs();
        if a > best_abs {
            best = axis;
            best_abs = a;
        }
    }
    best
}

/// Local basis pair from two angles per qubit, tensored together.
fn product_basis_from_angles(angles: &[f64]) -> ComplexMatrix {
    let single = |theta: f64, phi: f64| {
        let (s, c) = theta.sin_cos();
        let e = Complex64::from_polar(1.0, phi);
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(c, 0.0),
                -e.conj() * s,
                e * s,
                Complex64::new(c, 0.0),
            ],
        )
        .unwrap()
    };
    single(angles[0], angles[1]).kron(&single(angles[2], angles[3]))
}

/// Relative-entropy classical correlations: distance from the closest
/// classical state to the product set, which for relative entropy is
/// attained at the product of its marginals.
pub fn classical_correlations_re(rho: &DensityMatrix) -> Result<MeasureResult> {
    classical_correlations_re_with(rho, &OptimizerSettings::default())
}

pub fn classical_correlations_re_with(
    rho: &DensityMatrix,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    require_two_qubits(rho)?;
    let q = quantum_correlations_re_with(rho, settings)?;
    let chi = q
        .closest_state
        .expect("quantum correlations always report a closest state");
    let a = chi.partial_trace(&[0])?;
    let b = chi.partial_trace(&[1])?;
    let value = a.vn_entropy() + b.vn_entropy() - chi.vn_entropy();
    let product = DensityMatrix::new(2, a.matrix().kron(b.matrix()))?;
    Ok(MeasureResult {
        value: sanitize(value),
        status: q.status,
        closest_state: Some(product),
    })
}

/// Relative-entropy total correlations: distance to the product set,
/// attained at the product of the marginals.
pub fn total_correlations_re(rho: &DensityMatrix) -> Result<MeasureResult> {
    require_two_qubits(rho)?;
    let a = rho.partial_trace(&[0])?;
    let b = rho.partial_trace(&[1])?;
    let value = a.vn_entropy() + b.vn_entropy() - rho.vn_entropy();
    let product = DensityMatrix::new(2, a.matrix().kron(b.matrix()))?;
    Ok(MeasureResult::closed(value, Some(product)))
}

/// Relative entropy of entanglement of a two-qubit BD state: distance to the
/// separable BD states (the octahedron |c1| + |c2| + |c3| <= 1, equivalently
/// all Bell weights <= 1/2). Restricting to BD separable states is justified
/// by twirling; the spot check against general separable states lives in the
/// test suite.
pub fn entanglement_re_bd(c: &CorrelationTriple) -> Result<MeasureResult> {
    entanglement_re_bd_with(c, &OptimizerSettings::default())
}

pub fn entanglement_re_bd_with(
    c: &CorrelationTriple,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    if c.num_qubits() != 2 {
        return Err(Error::InvalidArgument(
            "entanglement measure is implemented for two qubits".into(),
        ));
    }
    if c.octahedron_norm() <= 1.0 + 1e-12 {
        return Ok(MeasureResult::closed(0.0, Some(bd_state(c))));
    }

    let lambdas: Vec<f64> = bd_eigenvalues(c).into_iter().map(|(l, _)| l).collect();
    let objective = {
        let lambdas = lambdas.clone();
        move |z: &[f64]| {
            let mu = fold_to_separable(softmax(z));
            let mut s = 0.0;
            for (l, m) in lambdas.iter().zip(&mu) {
                if *l > 1e-15 {
                    if *m < 1e-300 {
                        return f64::INFINITY;
                    }
                    s += l * (l / m).log2();
                }
            }
            s
        }
    };

    // Analytic candidate: cap the dominant weight at 1/2 and rescale the
    // rest; this is the known closest separable BD state.
    let (imax, &lmax) = lambdas
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let candidate: Vec<f64> = lambdas
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if i == imax {
                0.5
            } else {
                l / (2.0 * (1.0 - lmax))
            }
        })
        .collect();
    let seeds = vec![softmax_logits(&candidate)];
    let outcome = minimize_multistart(&objective, 4, &seeds, settings);

    let mu = fold_to_separable(softmax(&outcome.point));
    let closest = bd_state(&triple_from_sector_weights(&mu)?);
    Ok(MeasureResult {
        value: sanitize(outcome.value),
        status: OptimizerStatus::from_outcome(&outcome),
        closest_state: Some(closest),
    })
}

/// Pull a simplex point into the separable region (all weights <= 1/2) by
/// folding toward the barycenter; exact on the boundary, identity inside.
fn fold_to_separable(mu: Vec<f64>) -> Vec<f64> {
    let max = mu.iter().cloned().fold(0.0, f64::max);
    if max <= 0.5 {
        return mu;
    }
    let t = (max - 0.5) / (max - 0.25);
    mu.into_iter().map(|m| m + t * (0.25 - m)).collect()
}

/// Triple of the BD state with the given Bell-sector weights (two qubits,
/// sector order as in [`bd_eigenvalues`]).
fn triple_from_sector_weights(mu: &[f64]) -> Result<CorrelationTriple> {
    let signs = allowed_sign_triples(2);
    let mut c = [0.0; 3];
    for (weight, s) in mu.iter().zip(signs.iter()) {
        for j in 0..3 {
            c[j] += weight * s[j] as f64;
        }
    }
    CorrelationTriple::new(c[0], c[1], c[2], 2)
}

/// Global discord of a generalized BD state: coincides with the
/// relative-entropy coherence in the plus/minus basis on this family.
pub fn global_discord_m3n(c: &CorrelationTriple) -> Result<MeasureResult> {
    coherence(&bd_state(c), PauliAxis::X, DistanceKind::RelativeEntropy)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.num_qubits() != 2 {
        return Err(Error::InvalidArgument(format!(
            "measure requires a two-qubit state, got {} qubits",
            rho.num_qubits()
        )));
    }
    Ok(())
}
