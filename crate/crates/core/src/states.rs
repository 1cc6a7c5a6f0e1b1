//! Bell-diagonal and generalized correlation states.
//!
//! For an even number of qubits N the three operators sigma_j^{tensor N}
//! commute, and the family rho = 2^{-N} (I + sum_j c_j sigma_j^{tensor N})
//! is fully parameterized by the correlation triple (c1, c2, c3). These
//! states have all maximally mixed marginals.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::density::{tol, DensityMatrix};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::pauli::{pauli_string, PauliAxis};

/// Correlation triple c_j = <sigma_j^{tensor N}> for an even qubit count.
///
/// Construction validates both the component range and physicality of the
/// associated state, so a value of this type always denotes a real state.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CorrelationTriple {
    c1: f64,
    c2: f64,
    c3: f64,
    num_qubits: usize,
}

impl CorrelationTriple {
    pub fn new(c1: f64, c2: f64, c3: f64, num_qubits: usize) -> Result<Self> {
        if num_qubits < 2 || !num_qubits.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "correlation states need an even qubit count >= 2, got {num_qubits}"
            )));
        }
        for (name, c) in [("c1", c1), ("c2", c2), ("c3", c3)] {
            if !c.is_finite() || c.abs() > 1.0 + 1e-12 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must lie in [-1, 1], got {c}"
                )));
            }
        }
        // Absorb strictly-boundary round-off before the physicality test.
        let clamp = |c: f64| c.clamp(-1.0, 1.0);
        let (c1, c2, c3) = (clamp(c1), clamp(c2), clamp(c3));
        let min_eig = bd_eigenvalues_raw(c1, c2, c3, num_qubits)
            .into_iter()
            .map(|(l, _)| l)
            .fold(f64::INFINITY, f64::min);
        if min_eig < tol::PSD {
            return Err(Error::NonPhysicalState {
                eigenvalue: min_eig,
            });
        }
        Ok(Self {
            c1,
            c2,
            c3,
            num_qubits,
        })
    }

    pub fn components(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn component(&self, axis: PauliAxis) -> f64 {
        self.components()[axis.index() - 1]
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Euclidean projection onto a single correlation axis: keep the chosen
    /// component, zero the others. Always physical.
    pub fn project_onto(&self, axis: PauliAxis) -> Self {
        let mut c = [0.0; 3];
        c[axis.index() - 1] = self.component(axis);
        Self {
            c1: c[0],
            c2: c[1],
            c3: c[2],
            num_qubits: self.num_qubits,
        }
    }

    /// l1 norm |c1| + |c2| + |c3|; at most 1 exactly on the separable set.
    pub fn octahedron_norm(&self) -> f64 {
        self.c1.abs() + self.c2.abs() + self.c3.abs()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        bd_eigenvalues(self)
            .into_iter()
            .map(|(l, _)| l)
            .fold(f64::INFINITY, f64::min)
    }
}

/// The four joint-eigenvalue sectors of the commuting sigma_j^{tensor N}.
/// Sign triples satisfy s1 s2 s3 = (-1)^{N/2}; each sector has dimension
/// 2^N / 4.
pub(crate) fn allowed_sign_triples(num_qubits: usize) -> [[i8; 3]; 4] {
    let s3_of = |s1: i8, s2: i8| -> i8 {
        let parity = if (num_qubits / 2).is_multiple_of(2) { 1 } else { -1 };
        parity * s1 * s2
    };
    [
        [1, 1, s3_of(1, 1)],
        [1, -1, s3_of(1, -1)],
        [-1, 1, s3_of(-1, 1)],
        [-1, -1, s3_of(-1, -1)],
    ]
}

/// Analytic spectrum of the correlation state for arbitrary components,
/// physical or not. Sector order is fixed: (s1, s2) over (+,+), (+,-),
/// (-,+), (-,-) with s3 determined by the parity constraint.
pub(crate) fn bd_eigenvalues_raw(
    c1: f64,
    c2: f64,
    c3: f64,
    num_qubits: usize,
) -> Vec<(f64, usize)> {
    let dim = 1usize << num_qubits;
    let mult = dim / 4;
    allowed_sign_triples(num_qubits)
        .iter()
        .map(|s| {
            let lambda =
                (1.0 + s[0] as f64 * c1 + s[1] as f64 * c2 + s[2] as f64 * c3) / dim as f64;
            (lambda, mult)
        })
        .collect()
}

/// Analytic eigenvalues with multiplicities of [`bd_state`].
pub fn bd_eigenvalues(c: &CorrelationTriple) -> Vec<(f64, usize)> {
    bd_eigenvalues_raw(c.c1, c.c2, c.c3, c.num_qubits)
}

/// Build the correlation state 2^{-N} (I + sum_j c_j sigma_j^{tensor N}).
pub fn bd_state(c: &CorrelationTriple) -> DensityMatrix {
    let n = c.num_qubits;
    let dim = 1usize << n;
    let mut acc = ComplexMatrix::identity(dim);
    for axis in PauliAxis::ALL {
        let coeff = c.component(axis);
        if coeff != 0.0 {
            acc = acc.add(&pauli_string(axis, n).scale_re(coeff));
        }
    }
    DensityMatrix::new(n, acc.scale_re(1.0 / dim as f64))
        .expect("validated triple always yields a physical state")
}

/// Extract the correlation triple c_j = Tr(rho sigma_j^{tensor N}).
pub fn triple_of(rho: &DensityMatrix) -> Result<CorrelationTriple> {
    let n = rho.num_qubits();
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "correlation triples are defined for even qubit counts, got {n}"
        )));
    }
    let mut c = [0.0; 3];
    for axis in PauliAxis::ALL {
        let s = pauli_string(axis, n);
        let val = rho.matrix().matmul(&s).trace();
        if val.im.abs() > 1e-10 {
            return Err(Error::ImaginaryResidue { residue: val.im });
        }
        c[axis.index() - 1] = val.re;
    }
    CorrelationTriple::new(c[0], c[1], c[2], n)
}

/// Deterministic non-BD state with a prescribed two-qubit triple.
///
/// Starts from the correlation state, adds a seeded Gaussian Hermitian
/// perturbation that has been Gram-Schmidt orthogonalized (Hilbert-Schmidt)
/// against I, sigma1 x sigma1, sigma2 x sigma2 and sigma3 x sigma3 — which
/// preserves both the trace and the triple exactly — and halves the
/// perturbation strength until the result is positive semidefinite.
pub fn random_state_with_triple(
    c: &CorrelationTriple,
    perturbation_scale: f64,
    seed: u64,
) -> Result<DensityMatrix> {
    if c.num_qubits != 2 {
        return Err(Error::InvalidArgument(
            "perturbed triple states are built for two qubits only".into(),
        ));
    }
    if perturbation_scale < 0.0 {
        return Err(Error::InvalidArgument(
            "perturbation scale must be nonnegative".into(),
        ));
    }
    let margin = 1e-3;
    let min_eig = c.min_eigenvalue();
    if min_eig < margin {
        return Err(Error::NoMargin {
            eigenvalue: min_eig,
        });
    }

    let base = bd_state(c);
    if perturbation_scale == 0.0 {
        return Ok(base);
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut p = ComplexMatrix::from_fn(4, 4, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    p = p.add(&p.adjoint()).scale_re(0.5);

    // Protected directions: identity plus the three diagonal correlators.
    let mut protected = vec![ComplexMatrix::identity(4)];
    for axis in PauliAxis::ALL {
        protected.push(pauli_string(axis, 2));
    }
    for d in &protected {
        let overlap = d.hs_inner(&p) / d.hs_inner(d);
        p = p.sub(&d.scale(overlap));
    }
    let norm = p.frobenius_norm();
    if norm < 1e-12 {
        return Err(Error::InvalidArgument(
            "degenerate perturbation draw; use a different seed".into(),
        ));
    }
    p = p.scale_re(1.0 / norm);

    let mut eps = perturbation_scale;
    for _ in 0..60 {
        let candidate = base.matrix().add(&p.scale_re(eps));
        if let Ok(rho) = DensityMatrix::new(2, candidate) {
            return Ok(rho);
        }
        eps *= 0.5;
    }
    Err(Error::NoMargin {
        eigenvalue: min_eig,
    })
}

/// Seeded full-rank random density matrix (Ginibre construction G G^dag,
/// normalized). Handy as generic test input.
pub fn random_density(num_qubits: usize, seed: u64) -> DensityMatrix {
    let dim = 1usize << num_qubits;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let rho = g.matmul(&g.adjoint());
    let trace = rho.trace().re;
    DensityMatrix::new(num_qubits, rho.scale_re(1.0 / trace))
        .expect("Ginibre construction is positive definite")
}
