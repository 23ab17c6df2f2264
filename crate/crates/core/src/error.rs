//! Error type shared across the library.
//!
//! Every fallible operation reports through [`Error`]; numeric gates carry the
//! offending residual so callers can log how far an input was from valid.

use thiserror::Error;

/// Library-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes for matrix, state, channel, and certification operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A dimension was zero or otherwise unusable.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// Matrix data contained NaN or infinite entries.
    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    /// Two operands disagreed on shape.
    #[error("dimension mismatch: {context} (left {left:?}, right {right:?})")]
    DimensionMismatch {
        context: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    /// Input failed the Hermiticity gate.
    #[error("matrix is not Hermitian: asymmetry residual {residual:.3e} exceeds {bound:.3e}")]
    NotHermitian { residual: f64, bound: f64 },

    /// A matrix expected to be unitary was not, within tolerance.
    #[error("matrix is not unitary: residual {residual:.3e} exceeds {bound:.3e}")]
    NotUnitary { residual: f64, bound: f64 },

    /// `i U^dag dU/dtheta` had a non-Hermitian part too large for a unitary family.
    #[error(
        "inputs do not form a unitary family: anti-Hermitian residual {residual:.3e} exceeds {bound:.3e}"
    )]
    NotUnitaryFamily { residual: f64, bound: f64 },

    /// Kraus operators failed the completeness relation.
    #[error("Kraus set is not trace preserving: completeness residual {residual:.3e}")]
    IncompleteKraus { residual: f64 },

    /// A state vector was not normalized.
    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NormViolation { deviation: f64 },

    /// A density matrix had the wrong trace.
    #[error("density matrix trace deviates from one by {deviation:.3e}")]
    TraceNotOne { deviation: f64 },

    /// A density matrix had a significantly negative eigenvalue.
    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    /// The derivative handed to the SLD solver was not trace-free.
    #[error("invalid family: d(rho)/d(theta) has trace {trace:.3e}, expected 0")]
    NotTraceless { trace: f64 },

    /// A Hamiltonian family failed the commutation precondition.
    #[error("family is not commuting: ||[dH, H]|| = {commutator_norm:.3e}")]
    NotCommuting { commutator_norm: f64 },

    /// The two routes of the commuting-generalization check disagreed.
    #[error("spread mismatch in commuting check: lhs {lhs:.12e} vs rhs {rhs:.12e}")]
    SpreadMismatch { lhs: f64, rhs: f64 },

    /// The finite-difference oracle disagreed with the closed-form value.
    #[error(
        "oracle mismatch: closed form {value:.12e} vs finite difference {oracle:.12e} (band {band:.3e})"
    )]
    OracleMismatch { value: f64, oracle: f64, band: f64 },

    /// Line-search bracket did not contain a minimum even after widening.
    #[error("bracket failure: no interior minimum after {attempts} widenings")]
    BracketFailure { attempts: usize },

    /// An operation required a different family kind.
    #[error("wrong family kind: expected {expected}")]
    WrongFamilyKind { expected: &'static str },

    /// Experiment configuration was rejected.
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}
