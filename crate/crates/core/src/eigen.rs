//! Hermitian eigendecomposition via two-sided complex Jacobi rotations.
//!
//! All matrix functions in this crate (log, sqrt, absolute value) go through
//! the spectral decomposition computed here; dimensions never exceed 2^8, so
//! the quadratically convergent Jacobi iteration is plenty fast and delivers
//! eigenpairs accurate to a few ulps of the matrix norm.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Spectral decomposition A = V diag(values) V^dag of a Hermitian matrix.
/// Eigenvalues are real and sorted ascending; `vectors` holds the matching
/// orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuild V diag(values) V^dag, mostly for accuracy checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let d = ComplexMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(self.values[r], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        self.vectors.matmul(&d).matmul(&self.vectors.adjoint())
    }

    /// V f(diag) V^dag for a scalar function applied to the spectrum.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let d = ComplexMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(f(self.values[r]), 0.0)
            } else {
                Complex64::ZERO
            }
        });
        self.vectors.matmul(&d).matmul(&self.vectors.adjoint())
    }
}

const HERMITIAN_INPUT_TOL: f64 = 1e-8;
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as (A + A^dag)/2 before iterating, which absorbs
/// round-off from upstream arithmetic; inputs whose Hermitian deviation
/// exceeds 1e-8 are rejected instead of silently averaged.
pub fn eigh(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::InvalidArgument(
            "eigendecomposition requires a square matrix".into(),
        ));
    }
    let dev = a.hermitian_deviation();
    if dev > HERMITIAN_INPUT_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }

    let n = a.rows();
    // Symmetrize and work on a mutable copy.
    let mut m = ComplexMatrix::from_fn(n, n, |r, c| (a[(r, c)] + a[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let stop = 1e-30_f64 * scale * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (m[(i, i)].re, i)).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let values: Vec<f64> = pairs.iter().map(|&(val, _)| val).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, pairs[c].1)]);
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn eigvalsh(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eigh(a)?.values)
}

/// One Jacobi rotation annihilating the (p, q) entry. The 2x2 Hermitian block
/// [[alpha, beta], [conj(beta), gamma]] is diagonalized by the unitary
/// [[c, -conj(s)], [s, c]] with c real, s = sin(theta) e^{-i arg(beta)};
/// theta comes from the usual real-symmetric formula applied to |beta|.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = m[(p, q)];
    let b = beta.norm();
    if b == 0.0 {
        return;
    }
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;

    let tau = (alpha - gamma) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let sigma = t * c;
    let phase = beta / b; // e^{i arg(beta)}
    let s = phase.conj() * sigma;

    let n = m.rows();
    // Columns p and q of M <- M U.
    for r in 0..n {
        let mrp = m[(r, p)];
        let mrq = m[(r, q)];
        m[(r, p)] = mrp * c + mrq * s;
        m[(r, q)] = mrq * c - mrp * s.conj();
    }
    // Rows p and q of M <- U^dag M.
    for col in 0..n {
        let mpc = m[(p, col)];
        let mqc = m[(q, col)];
        m[(p, col)] = mpc * c + mqc * s.conj();
        m[(q, col)] = mqc * c - mpc * s;
    }
    // Clean up the pivot block so round-off cannot accumulate there.
    m[(p, q)] = Complex64::ZERO;
    m[(q, p)] = Complex64::ZERO;
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = vrp * c + vrq * s;
        v[(r, q)] = vrq * c - vrp * s.conj();
    }
}

/// Square root of a positive semidefinite Hermitian matrix. Eigenvalues in
/// the round-off band [-1e-9, 0) are clamped to zero; anything lower is a
/// genuine physicality failure and is reported as such.
pub fn sqrtm_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigh(a)?;
    if let Some(&min) = eig
        .values
        .iter()
        .min_by(|a, b| a.partial_cmp(b).unwrap())
    {
        if min < -1e-9 {
            return Err(Error::NonPhysicalState { eigenvalue: min });
        }
    }
    Ok(eig.apply_fn(|x| x.max(0.0).sqrt()))
}
