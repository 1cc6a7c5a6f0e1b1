//! Pauli operators and the product eigenbases they induce.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// One of the three spin directions. The integer labels follow the usual
/// 1 = x (plus/minus basis), 2 = y, 3 = z (computational basis) convention.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X = 1,
    Y = 2,
    Z = 3,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            1 => Ok(PauliAxis::X),
            2 => Ok(PauliAxis::Y),
            3 => Ok(PauliAxis::Z),
            other => Err(Error::InvalidArgument(format!(
                "Pauli axis must be 1, 2 or 3, got {other}"
            ))),
        }
    }

    /// The two axes other than `self`, in ascending label order.
    pub fn others(self) -> (PauliAxis, PauliAxis) {
        match self {
            PauliAxis::X => (PauliAxis::Y, PauliAxis::Z),
            PauliAxis::Y => (PauliAxis::X, PauliAxis::Z),
            PauliAxis::Z => (PauliAxis::X, PauliAxis::Y),
        }
    }
}

/// The 2x2 Pauli matrix for the given axis.
pub fn pauli_matrix(axis: PauliAxis) -> ComplexMatrix {
    let (a, b, c, d) = match axis {
        PauliAxis::X => (
            Complex64::ZERO,
            Complex64::ONE,
            Complex64::ONE,
            Complex64::ZERO,
        ),
        PauliAxis::Y => (
            Complex64::ZERO,
            -Complex64::I,
            Complex64::I,
            Complex64::ZERO,
        ),
        PauliAxis::Z => (
            Complex64::ONE,
            Complex64::ZERO,
            Complex64::ZERO,
            -Complex64::ONE,
        ),
    };
    ComplexMatrix::new(2, 2, vec![a, b, c, d]).unwrap()
}

/// N-fold tensor power of a single-qubit operator. Qubit 0 is the leftmost
/// factor and therefore the most significant bit of the matrix index.
pub fn tensor_power(op: &ComplexMatrix, n: usize) -> ComplexMatrix {
    assert!(n >= 1);
    let mut out = op.clone();
    for _ in 1..n {
        out = out.kron(op);
    }
    out
}

/// sigma_axis applied to every one of `n` qubits.
pub fn pauli_string(axis: PauliAxis, n: usize) -> ComplexMatrix {
    tensor_power(&pauli_matrix(axis), n)
}

/// Single-qubit unitary whose columns are the +1 and -1 eigenvectors of
/// sigma_axis, in that order; it maps the computational basis onto the axis
/// eigenbasis, so W^dag sigma_axis W = sigma_z.
pub fn axis_eigenbasis(axis: PauliAxis) -> ComplexMatrix {
    let h = 1.0 / 2.0_f64.sqrt();
    match axis {
        PauliAxis::X => ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap(),
        PauliAxis::Y => ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(h, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(0.0, h),
                Complex64::new(0.0, -h),
            ],
        )
        .unwrap(),
        PauliAxis::Z => ComplexMatrix::identity(2),
    }
}

/// Product-basis rotation for `n` qubits: the tensor power of
/// [`axis_eigenbasis`]. Conjugating a state by its adjoint expresses it in
/// the sigma_axis product eigenbasis.
pub fn product_basis_rotation(axis: PauliAxis, n: usize) -> ComplexMatrix {
    tensor_power(&axis_eigenbasis(axis), n)
}

/// Single-qubit operator embedded on one qubit of an `n`-qubit register,
/// identity elsewhere.
pub fn embed_single(op: &ComplexMatrix, qubit: usize, n: usize) -> ComplexMatrix {
    assert!(qubit < n);
    let mut out = if qubit == 0 {
        op.clone()
    } else {
        ComplexMatrix::identity(2)
    };
    for q in 1..n {
        let factor = if q == qubit {
            op.clone()
        } else {
            ComplexMatrix::identity(2)
        };
        out = out.kron(&factor);
    }
    out
}
