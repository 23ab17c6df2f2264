//! Numerics for the quantum Fisher information (QFI) of phase-shift channels
//! and their Hamiltonian extensions.
//!
//! The library stacks up as follows.
//!
//! * [`matrix`] / [`hermitian`] — dense complex linear algebra: Hermitian
//!   eigendecompositions, unitary exponentials `exp(-i s H)`, the exact
//!   divided-difference derivative of `exp(-i H(theta))`, Kronecker products,
//!   partial traces, and Trotter products.
//! * [`state`] / [`channel`] — pure states, density matrices, Kraus channels,
//!   and one-parameter unitary families `U(theta) = exp(-i H(theta))`.
//! * [`random`] — seeded, splittable random ensembles (GUE operators, Haar
//!   states/unitaries, random channels) for reproducible experiments.
//! * [`qfi`] — state QFI by three independent routes: the symmetric
//!   logarithmic derivative, the pure-state formula, and the Bures-distance
//!   finite difference.
//! * [`channel_qfi`] — channel QFI of unitary families by two independent
//!   routes: spectral spread of the local generator `i U^dag dU`, and the
//!   scalar norm minimization `4 min_x ||dU - i x U||^2`.
//! * [`extension`] — the certification lab: randomized trials confirming that
//!   Hamiltonian extensions `theta G (x) I + H_int` never increase the channel
//!   QFI of the phase shift `theta G`, plus QFI property suites and
//!   convergence checks.
//! * [`config`] / [`tol`] — experiment configuration and the central record
//!   of numeric tolerances.
//!
//! Values that matter are always computed twice by routes that share no code,
//! and randomized experiments are reproducible: every trial draws from a
//! substream keyed by `(master seed, purpose, index)`.

pub mod channel;
pub mod channel_qfi;
pub mod config;
pub mod error;
pub mod extension;
pub mod hermitian;
pub mod matrix;
pub mod qfi;
pub mod random;
pub mod search;
pub mod state;
pub mod tol;

pub use error::{Error, Result};
