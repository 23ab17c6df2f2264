//! Central record of numeric tolerances and search budgets.
//!
//! Every gate in the library reads its threshold from [`Tolerances`] so that a
//! single struct documents which epsilon guards which invariant. The defaults
//! are what the certification suites and the CLI use; experiment configs may
//! override individual fields.

use serde::{Deserialize, Serialize};

/// Numeric thresholds used across matrices, states, channels, searches, and
/// certification checks.
///
/// Norms are spectral (largest singular value) unless noted. "Relative" gates
/// scale as `tol * (1 + norm)` so they behave sensibly for both tiny and large
/// operators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative Hermiticity gate: `||M - M^dag|| <= hermiticity_rel * (1 + ||M||)`.
    pub hermiticity_rel: f64,
    /// Unitarity of computed matrix exponentials: `||U^dag U - I||`.
    pub unitarity: f64,
    /// Eigendecomposition residuals: orthonormality and relative reconstruction.
    pub eig_residual: f64,
    /// Eigenvalue gap below which divided differences switch to the confluent limit.
    pub degenerate_gap: f64,
    /// Pure-state normalization: `| ||psi|| - 1 |`.
    pub pure_norm: f64,
    /// Density-matrix trace gate: `|tr(rho) - 1|`.
    pub state_trace: f64,
    /// Density-matrix positivity: eigenvalues may dip to `-state_psd`.
    pub state_psd: f64,
    /// Kraus completeness: `||sum A^dag A - I||`.
    pub kraus_completeness: f64,
    /// Trace-free gate on d(rho)/d(theta) before solving for the SLD.
    pub traceless: f64,
    /// Support cutoff for SLD denominators, relative to `tr(rho)`.
    pub sld_cutoff_rel: f64,
    /// Unitarity required of `U` before extracting a local generator.
    pub unitary_input: f64,
    /// Largest anti-Hermitian residual allowed in `i U^dag dU`.
    pub local_generator_residual: f64,
    /// Golden-section convergence width on the minimizer `x`.
    pub search_x_tol: f64,
    /// Default bracket half-width as a multiple of `||dH/dtheta||`.
    pub bracket_scale: f64,
    /// Step used by the Bures finite-difference QFI oracle.
    pub bures_dtheta: f64,
    /// Random probe restarts for the finite-difference channel-QFI oracle.
    pub oracle_restarts: usize,
    /// Relative band for oracle vs. closed-form agreement:
    /// `|c - oracle| <= oracle_rel * (1 + c)`.
    pub oracle_rel: f64,
    /// Certification threshold on `max(0, -margin)` for the main inequality.
    pub violation: f64,
    /// Cross-method agreement (spectral spread vs. norm minimization, Popoviciu
    /// saturation, commuting generalization).
    pub qfi_match: f64,
    /// Largest `||[dH/dtheta, H]||` accepted as a commuting family.
    pub commuting_gate: f64,
    /// Slack for QFI monotonicity under channels (and unitary equality).
    pub monotonicity_slack: f64,
    /// Slack for QFI convexity.
    pub convexity_slack: f64,
    /// Slack for QFI additivity on product states.
    pub additivity_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity_rel: 1e-12,
            unitarity: 1e-10,
            eig_residual: 1e-10,
            degenerate_gap: 1e-12,
            pure_norm: 1e-12,
            state_trace: 1e-10,
            state_psd: 1e-10,
            kraus_completeness: 1e-9,
            traceless: 1e-9,
            sld_cutoff_rel: 1e-11,
            unitary_input: 1e-9,
            local_generator_residual: 1e-8,
            search_x_tol: 1e-10,
            bracket_scale: 4.0,
            bures_dtheta: 1e-4,
            oracle_restarts: 2,
            oracle_rel: 1e-3,
            violation: 1e-9,
            qfi_match: 1e-8,
            commuting_gate: 1e-9,
            monotonicity_slack: 1e-8,
            convexity_slack: 1e-8,
            additivity_slack: 1e-7,
        }
    }
}
