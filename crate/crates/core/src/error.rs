use thiserror::Error;

/// Errors produced by construction and evaluation routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian (max |A - A^dag| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U^dag U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    /// A correlation triple (or a matrix claiming to be a state) fails
    /// positive semidefiniteness beyond the allowed round-off band.
    #[error("nonphysical state: eigenvalue {eigenvalue:.6e} below tolerance")]
    NonPhysicalState { eigenvalue: f64 },

    #[error("state violates unit trace: trace = {trace}")]
    NonUnitTrace { trace: f64 },

    /// Relative entropy diverges: the second argument has (numerically) zero
    /// weight on part of the first argument's support. Distinct from any
    /// overflow: no arithmetic has been attempted on the offending terms.
    #[error("infinite divergence: support of rho not contained in support of tau")]
    InfiniteDivergence,

    /// Triple extraction found an imaginary residue beyond tolerance,
    /// indicating a corrupted input state.
    #[error("inconsistent state: imaginary residue {residue:.3e} in correlation function")]
    ImaginaryResidue { residue: f64 },

    /// The requested triple sits too close to the physicality boundary for a
    /// perturbed-state construction to have room.
    #[error("no margin: smallest analytic eigenvalue {eigenvalue:.6e} below required margin")]
    NoMargin { eigenvalue: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
