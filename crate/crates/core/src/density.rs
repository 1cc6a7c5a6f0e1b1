//! Density matrices and the information-theoretic primitives on them.
//!
//! All entropic quantities in this crate use base-2 logarithms, so entropies
//! and relative entropies are measured in bits.

use num_complex::Complex64;

use crate::eigen::{eigh, eigvalsh, sqrtm_psd};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Validation tolerances for physical states.
pub mod tol {
    /// Max entrywise deviation from Hermiticity.
    pub const HERMITIAN: f64 = 1e-10;
    /// Max deviation of the trace from one.
    pub const TRACE: f64 = 1e-10;
    /// Most negative eigenvalue still attributed to round-off.
    pub const PSD: f64 = -1e-9;
    /// Eigenvalues of a log argument below this count as strict zeros.
    pub const SUPPORT: f64 = 1e-12;
    /// State weight above this on a zero eigenspace makes a divergence real.
    pub const WEIGHT: f64 = 1e-10;
}

/// Hermitian, unit-trace, positive semidefinite matrix over `num_qubits`
/// qubits. Qubit 0 is the leftmost tensor factor (most significant bit).
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a quantum state.
    pub fn new(num_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        if num_qubits == 0 {
            return Err(Error::InvalidArgument(
                "a state needs at least one qubit".into(),
            ));
        }
        let dim = 1usize << num_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.rows(),
            });
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol::HERMITIAN {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::TRACE || trace.im.abs() > tol::TRACE {
            return Err(Error::NonUnitTrace { trace: trace.re });
        }
        let min_eig = eigvalsh(&matrix)?
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if min_eig < tol::PSD {
            return Err(Error::NonPhysicalState {
                eigenvalue: min_eig,
            });
        }
        Ok(Self { num_qubits, matrix })
    }

    /// The maximally mixed state I / 2^n.
    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self {
            num_qubits,
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        }
    }

    /// Pure state |psi><psi| from an amplitude vector (normalized here).
    pub fn from_state_vector(num_qubits: usize, amplitudes: &[Complex64]) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let matrix = ComplexMatrix::from_fn(dim, dim, |r, c| {
            amplitudes[r] * amplitudes[c].conj() / (norm * norm)
        });
        Self::new(num_qubits, matrix)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// Reduced state on the given qubits; `keep` must be nonempty, sorted or
    /// not, without duplicates, and within range. Kept qubits preserve their
    /// relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument(
                "partial trace must keep at least one qubit".into(),
            ));
        }
        let n = self.num_qubits;
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != keep.len() {
            return Err(Error::InvalidArgument(
                "duplicate qubit index in keep set".into(),
            ));
        }
        if let Some(&bad) = sorted.iter().find(|&&q| q >= n) {
            return Err(Error::InvalidArgument(format!(
                "qubit index {bad} out of range for {n}-qubit state"
            )));
        }

        let traced: Vec<usize> = (0..n).filter(|q| !sorted.contains(q)).collect();
        let k = sorted.len();
        let keep_dim = 1usize << k;
        let rest_dim = 1usize << traced.len();

        // Scatter a (kept, traced) bit pair back into a full register index.
        // Qubit q occupies bit (n - 1 - q), qubit 0 being most significant.
        let compose = |kept_bits: usize, rest_bits: usize| -> usize {
            let mut idx = 0usize;
            for (pos, &q) in sorted.iter().enumerate() {
                let bit = (kept_bits >> (k - 1 - pos)) & 1;
                idx |= bit << (n - 1 - q);
            }
            for (pos, &q) in traced.iter().enumerate() {
                let bit = (rest_bits >> (traced.len() - 1 - pos)) & 1;
                idx |= bit << (n - 1 - q);
            }
            idx
        };

        let mut out = ComplexMatrix::zeros(keep_dim, keep_dim);
        for r in 0..keep_dim {
            for c in 0..keep_dim {
                let mut acc = Complex64::ZERO;
                for rest in 0..rest_dim {
                    acc += self.matrix[(compose(r, rest), compose(c, rest))];
                }
                out[(r, c)] = acc;
            }
        }
        DensityMatrix::new(k, out)
    }

    /// Von Neumann entropy in bits: -sum lambda log2 lambda with 0 log 0 = 0.
    pub fn vn_entropy(&self) -> f64 {
        let eigs = eigvalsh(&self.matrix).expect("validated state is Hermitian");
        let mut s = 0.0;
        for lambda in eigs {
            debug_assert!(lambda >= tol::PSD, "validated state turned nonphysical");
            let l = lambda.max(0.0);
            if l > 0.0 {
                s -= l * l.log2();
            }
        }
        s
    }

    /// Quantum relative entropy S(rho || tau) in bits.
    ///
    /// Returns [`Error::InfiniteDivergence`] when `rho` carries weight above
    /// tolerance on the numerical null space of `tau`; this is decided before
    /// any logarithm is taken, so the signal is distinct from overflow.
    pub fn rel_entropy(&self, tau: &DensityMatrix) -> Result<f64> {
        if self.dim() != tau.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: tau.dim(),
            });
        }
        let tau_eig = eigh(tau.matrix())?;
        let mut cross = 0.0;
        for (k, &mu) in tau_eig.values.iter().enumerate() {
            let v = tau_eig.vectors.column(k);
            // <v_k| rho |v_k>
            let mut weight = Complex64::ZERO;
            for r in 0..self.dim() {
                let row: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(c, vc)| self.matrix[(r, c)] * vc)
                    .sum();
                weight += v[r].conj() * row;
            }
            let w = weight.re.max(0.0);
            if mu < tol::SUPPORT {
                if w > tol::WEIGHT {
                    return Err(Error::InfiniteDivergence);
                }
                continue;
            }
            cross += w * mu.log2();
        }
        Ok(-self.vn_entropy() - cross)
    }

    /// Normalized trace distance Tr sqrt((rho - tau)^2): the sum of absolute
    /// eigenvalues of the difference, ranging over [0, 2]. This is twice the
    /// conventional trace distance.
    pub fn trace_distance(&self, tau: &DensityMatrix) -> Result<f64> {
        if self.dim() != tau.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: tau.dim(),
            });
        }
        let diff = self.matrix.sub(&tau.matrix);
        Ok(eigvalsh(&diff)?.iter().map(|l| l.abs()).sum())
    }

    /// Uhlmann fidelity (Tr sqrt(sqrt(rho) tau sqrt(rho)))^2 in [0, 1].
    pub fn fidelity(&self, tau: &DensityMatrix) -> Result<f64> {
        if self.dim() != tau.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: tau.dim(),
            });
        }
        let root = sqrtm_psd(&self.matrix)?;
        let inner = root.matmul(&tau.matrix).matmul(&root);
        let tr: f64 = eigvalsh(&inner)?
            .iter()
            .map(|l| l.max(0.0).sqrt())
            .sum();
        Ok((tr * tr).min(1.0))
    }
}
