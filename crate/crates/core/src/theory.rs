//! Structural results tying the dynamics to the measures: the freezing
//! condition on correlation triples, the switch and sudden-death times of
//! the phase-damped evolution, the twirling map onto the correlation-state
//! family, and the coherence floor it induces.

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::measures::{coherence_with, DistanceKind, MeasureResult};
use crate::optim::OptimizerSettings;
use crate::pauli::{embed_single, pauli_matrix, product_basis_rotation, PauliAxis};
use crate::states::{allowed_sign_triples, bd_state, triple_of, CorrelationTriple};

/// A permutation (i, j, k) of the three axes: i is the product-constrained
/// axis, j the coherence reference axis, k the noise axis.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FreezingPermutation {
    product_axis: PauliAxis,
    coherence_axis: PauliAxis,
    noise_axis: PauliAxis,
}

impl FreezingPermutation {
    pub fn new(i: PauliAxis, j: PauliAxis, k: PauliAxis) -> Result<Self> {
        let mut labels = [i.index(), j.index(), k.index()];
        labels.sort_unstable();
        if labels != [1, 2, 3] {
            return Err(Error::InvalidArgument(
                "freezing permutation must use each axis exactly once".into(),
            ));
        }
        Ok(Self {
            product_axis: i,
            coherence_axis: j,
            noise_axis: k,
        })
    }

    pub fn product_axis(&self) -> PauliAxis {
        self.product_axis
    }

    pub fn coherence_axis(&self) -> PauliAxis {
        self.coherence_axis
    }

    pub fn noise_axis(&self) -> PauliAxis {
        self.noise_axis
    }
}

/// Does the triple satisfy c_i = (-1)^{N/2} c_j c_k within `tol`?
/// Triples on this surface keep their basis-j coherence constant under
/// axis-k flip noise.
pub fn freezing_check(c: &CorrelationTriple, perm: &FreezingPermutation, tol: f64) -> bool {
    let sign = if (c.num_qubits() / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    let ci = c.component(perm.product_axis);
    let cj = c.component(perm.coherence_axis);
    let ck = c.component(perm.noise_axis);
    (ci - sign * cj * ck).abs() <= tol
}

/// Time at which the closest classical state's projection axis flips from
/// axis 1 to axis 3 under phase damping: t* = ln|c1/c3| / (2 gamma).
/// `None` when |c1| < |c3| (the axis never switches).
pub fn switch_time(c: &CorrelationTriple, gamma: f64) -> Result<Option<f64>> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "decoherence rate must be positive, got {gamma}"
        )));
    }
    let c1 = c.component(PauliAxis::X).abs();
    let c3 = c.component(PauliAxis::Z).abs();
    if c3 == 0.0 {
        return Err(Error::InvalidArgument(
            "switch time undefined for vanishing c3".into(),
        ));
    }
    if c1 < c3 {
        return Ok(None);
    }
    Ok(Some((c1 / c3).ln() / (2.0 * gamma)))
}

/// Entanglement sudden-death time of a two-qubit BD state under phase
/// damping at rate gamma: the earliest t at which every Bell weight has
/// dropped to 1/2 or below (separability onset). `Some(0)` for initially
/// separable states, `None` when the state never becomes separable.
pub fn esd_time(c: &CorrelationTriple, gamma: f64) -> Result<Option<f64>> {
    if c.num_qubits() != 2 {
        return Err(Error::InvalidArgument(
            "sudden-death time is defined for two qubits".into(),
        ));
    }
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "decoherence rate must be positive, got {gamma}"
        )));
    }
    let [c1, c2, c3] = c.components();
    let mut worst: f64 = 0.0;
    for s in allowed_sign_triples(2) {
        // Sector weight at time t: (1 + coef * e^{-2 gamma t} + s3 c3) / 4.
        let coef = s[0] as f64 * c1 + s[1] as f64 * c2;
        let rhs = 1.0 - s[2] as f64 * c3;
        if coef <= rhs {
            continue; // already at or below 1/2 for all t >= 0
        }
        if rhs <= 0.0 {
            return Ok(None); // this sector never drops to 1/2
        }
        worst = worst.max((coef / rhs).ln() / (2.0 * gamma));
    }
    Ok(Some(worst))
}

/// The 2^{2(N-1)} local unitaries generating the twirl onto the
/// correlation-state family: all products of sigma_x (x) sigma_x and
/// sigma_y (x) sigma_y acting on adjacent qubit pairs. Restricted to the
/// desk-scale qubit counts 2 and 4.
pub fn theta_unitaries(num_qubits: usize) -> Result<Vec<ComplexMatrix>> {
    if num_qubits != 2 && num_qubits != 4 {
        return Err(Error::InvalidArgument(format!(
            "twirl unitaries supported for 2 or 4 qubits, got {num_qubits}"
        )));
    }
    let n = num_qubits;
    let mut generators = Vec::with_capacity(2 * (n - 1));
    for axis in [PauliAxis::X, PauliAxis::Y] {
        let sigma = pauli_matrix(axis);
        for pair in 0..n - 1 {
            let op = embed_single(&sigma, pair, n).matmul(&embed_single(&sigma, pair + 1, n));
            generators.push(op);
        }
    }
    let count = 1usize << generators.len();
    let dim = 1usize << n;
    let mut out = Vec::with_capacity(count);
    for mask in 0..count {
        let mut u = ComplexMatrix::identity(dim);
        for (j, g) in generators.iter().enumerate() {
            if mask & (1 << j) != 0 {
                u = g.matmul(&u); // higher-index generators multiply on the left
            }
        }
        debug_assert!(u.is_unitary(1e-12));
        out.push(u);
    }
    Ok(out)
}

/// Twirl a state onto the correlation-state family: the uniform average of
/// conjugations by [`theta_unitaries`]. Preserves the correlation triple and
/// is idempotent; the accumulation order is fixed, so the output is
/// bit-stable.
pub fn theta_map(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let unitaries = theta_unitaries(n)?;
    let dim = rho.dim();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for u in &unitaries {
        acc = acc.add(&rho.matrix().conjugate_by(u));
    }
    DensityMatrix::new(n, acc.scale_re(1.0 / unitaries.len() as f64))
}

/// True when the unitary permutes the sigma_axis product-basis projectors:
/// every conjugated projector stays diagonal in that basis. This is the
/// defining property of an incoherent operation with unitary Kraus
/// operators.
pub fn incoherent_op_check(u: &ComplexMatrix, axis: PauliAxis) -> Result<bool> {
    if !u.is_square() {
        return Err(Error::InvalidArgument("unitary must be square".into()));
    }
    let dev = u.unitary_deviation();
    if dev > 1e-10 {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let dim = u.rows();
    let n = dim.trailing_zeros() as usize;
    if dim != (1usize << n) {
        return Err(Error::InvalidArgument(
            "unitary dimension must be a power of two".into(),
        ));
    }
    let w = product_basis_rotation(axis, n);
    // Columns of W^dag U W: the conjugated projector in basis coordinates is
    // the outer product of such a column with itself; diagonality means each
    // column carries at most one nonvanishing modulus.
    let m = w.adjoint().matmul(u).matmul(&w);
    for b in 0..dim {
        let col = m.column(b);
        let mut mags: Vec<f64> = col.iter().map(|z| z.norm()).collect();
        mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
        // Largest off-diagonal entry of the conjugated projector.
        if mags[0] * mags[1] > 1e-10 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Coherence of the correlation state sharing `rho`'s triple: a guaranteed
/// lower bound on the coherence of `rho` itself in the same basis, because
/// the twirl reaching that state is an incoherent operation.
pub fn coherence_floor(
    rho: &DensityMatrix,
    axis: PauliAxis,
    kind: DistanceKind,
) -> Result<MeasureResult> {
    coherence_floor_with(rho, axis, kind, &OptimizerSettings::default())
}

pub fn coherence_floor_with(
    rho: &DensityMatrix,
    axis: PauliAxis,
    kind: DistanceKind,
    settings: &OptimizerSettings,
) -> Result<MeasureResult> {
    let triple = triple_of(rho)?;
    coherence_with(&bd_state(&triple), axis, kind, settings)
}
