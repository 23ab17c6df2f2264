//! Quantum Fisher information of states: the symmetric logarithmic
//! derivative (SLD) route, the pure-state shortcut, and the Bures-distance
//! finite-difference route.
//!
//! The three routes are deliberately independent implementations so they can
//! certify each other: `sld_and_qfi` works in the eigenbasis of `rho`,
//! `qfi_pure` needs only inner products, and `qfi_via_bures_limit` touches
//! nothing but fidelities.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::ComplexMatrix;
use crate::state::{DensityMatrix, PureState};
use crate::tol::Tolerances;

/// Output of the SLD solve.
#[derive(Debug, Clone)]
pub struct SldResult {
    /// Symmetric logarithmic derivative `L` with `2 d(rho) = L rho + rho L`
    /// on the support of `rho`.
    pub sld: HermitianOperator,
    /// Fisher information `tr(rho L^2) >= 0`.
    pub qfi: f64,
    /// Number of eigenvalues of `rho` above the support cutoff.
    pub support_rank: usize,
}

/// Solves for the SLD and the QFI of `(rho, d rho / d theta)` in the
/// eigenbasis of `rho`.
///
/// Matrix elements with eigenvalue sums at or below the support cutoff
/// (`sld_cutoff_rel * tr(rho)`) are excluded; they correspond to directions
/// outside the support where the SLD is gauge freedom.
pub fn sld_and_qfi(
    rho: &DensityMatrix,
    rho_dot: &HermitianOperator,
    tol: &Tolerances,
) -> Result<SldResult> {
    let d = rho.dim();
    if rho_dot.dim() != d {
        return Err(Error::DimensionMismatch {
            context: "sld_and_qfi",
            left: (d, d),
            right: (rho_dot.dim(), rho_dot.dim()),
        });
    }
    let trace = rho_dot.matrix().trace();
    if trace.norm() > tol.traceless {
        return Err(Error::NotTraceless { trace: trace.norm() });
    }
    let es = rho.eig();
    let cutoff = tol.sld_cutoff_rel * rho.matrix().trace().re;
    // W = V^dag (d rho) V in the eigenbasis of rho.
    let w = &(&es.vectors().adjoint() * rho_dot.matrix()) * es.vectors();
    let mut l_tilde = ComplexMatrix::zeros(d, d);
    let mut qfi = 0.0;
    for i in 0..d {
        for j in 0..d {
            let s = es.values()[i] + es.values()[j];
            if s > cutoff {
                let wij = w[(i, j)];
                l_tilde.set(i, j, Complex64::new(2.0 / s, 0.0) * wij);
                qfi += 2.0 * wij.norm_sqr() / s;
            }
        }
    }
    let sld = HermitianOperator::symmetrize(&(es.vectors() * &l_tilde) * &es.vectors().adjoint());
    let support_rank = es.values().iter().filter(|&&lambda| lambda > cutoff).count();
    Ok(SldResult {
        sld,
        qfi: qfi.max(0.0),
        support_rank,
    })
}

/// QFI of a pure-state family: `4 ( <dpsi|dpsi> - |<psi|dpsi>|^2 )`.
pub fn qfi_pure(psi: &PureState, psi_dot: &[Complex64]) -> f64 {
    assert_eq!(psi.dim(), psi_dot.len(), "qfi_pure dimension mismatch");
    let dot_sq: f64 = psi_dot.iter().map(|z| z.norm_sqr()).sum();
    let overlap: Complex64 = psi
        .amplitudes()
        .iter()
        .zip(psi_dot)
        .map(|(a, b)| a.conj() * b)
        .sum();
    (4.0 * (dot_sq - overlap.norm_sqr())).max(0.0)
}

/// Relative floor under which eigenvalues inside [`fidelity`] are treated as
/// exact zeros. The square root amplifies roundoff brutally — an eigenvalue
/// that is really 0 but computed as 1e-16 contributes 1e-8 to the trace — so
/// everything below `floor * lambda_max` is clipped before the root.
const FIDELITY_EIG_FLOOR: f64 = 1e-14;

/// `1 - F(rho, sigma)^2` for qubits, computed without ever forming a number
/// adjacent to 1.
///
/// The closed form `F^2 = tr(rho sigma) + 2 sqrt(det rho det sigma)` loses
/// everything below one ulp of 1 when evaluated literally, yet the Bures
/// limit divides `1 - F` by `dtheta^2` and needs ten more digits than that.
/// Writing `sigma = rho + Delta` and using `tr rho = 1`, `rho + adj(rho) =
/// tr(rho) I`, and `det(rho + Delta) = det rho + tr(adj(rho) Delta) + det
/// Delta` turns the residual into a sum of Delta-scaled terms whose rounding
/// is relative to `Delta`, not to 1:
/// `1 - F^2 = 2 det(rho) (1 - sqrt(1 + u)) - tr(rho Delta)` with
/// `u = (tr(adj(rho) Delta) + det Delta) / det rho`.
fn qubit_one_minus_fidelity_sq(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> f64 {
    let det = |m: &ComplexMatrix| (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let delta = sigma - rho;
    // tr(rho Delta) and tr(adj(rho) Delta); adj swaps the diagonal and
    // negates the off-diagonal of a 2x2 matrix.
    let tr_rho_delta = (rho[(0, 0)] * delta[(0, 0)]
        + rho[(0, 1)] * delta[(1, 0)]
        + rho[(1, 0)] * delta[(0, 1)]
        + rho[(1, 1)] * delta[(1, 1)])
        .re;
    let tr_adj_delta = (rho[(1, 1)] * delta[(0, 0)] + rho[(0, 0)] * delta[(1, 1)]
        - rho[(0, 1)] * delta[(1, 0)]
        - rho[(1, 0)] * delta[(0, 1)])
        .re;
    let det_rho = det(rho).max(0.0);
    let det_delta = det(&delta);
    let growth = tr_adj_delta + det_delta;
    let t = if det_rho > 1e-4 {
        // Well-conditioned determinant: factor it out so the cancellation
        // 1 - sqrt(1 + u) happens analytically.
        let u = (growth / det_rho).max(-1.0);
        -2.0 * det_rho * u / (1.0 + (1.0 + u).sqrt()) - tr_rho_delta
    } else {
        // Near-singular rho: every term is already small, evaluate directly.
        let det_sigma = det(sigma).max(0.0);
        2.0 * det_rho - tr_rho_delta - 2.0 * (det_rho * det_sigma).sqrt()
    };
    t.clamp(0.0, 1.0)
}

/// `1 - F(rho, sigma)^2` with full relative accuracy for qubits and the
/// clipped eigendecomposition route above dimension 2.
fn one_minus_fidelity_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    assert_eq!(rho.dim(), sigma.dim(), "fidelity dimension mismatch");
    if rho.dim() == 2 {
        return qubit_one_minus_fidelity_sq(rho.matrix(), sigma.matrix());
    }
    let clipped_sqrt = |es: &crate::hermitian::EigenSystem| {
        let floor = FIDELITY_EIG_FLOOR * es.max().max(0.0);
        es.apply_function(|lambda| {
            Complex64::new(if lambda > floor { lambda.sqrt() } else { 0.0 }, 0.0)
        })
    };
    let sqrt_rho = clipped_sqrt(&rho.eig());
    let inner = &(&sqrt_rho * sigma.matrix()) * &sqrt_rho;
    let es = HermitianOperator::symmetrize(inner).eig();
    let floor = FIDELITY_EIG_FLOOR * es.max().max(0.0);
    let f: f64 = es
        .values()
        .iter()
        .map(|&lambda| if lambda > floor { lambda.sqrt() } else { 0.0 })
        .sum();
    let f = f.min(1.0);
    (1.0 - f * f).max(0.0)
}

/// Uhlmann fidelity `tr sqrt( sqrt(rho) sigma sqrt(rho) )`.
///
/// Qubit pairs use the closed form
/// `F^2 = tr(rho sigma) + 2 sqrt(det(rho) det(sigma))` in a residual
/// arrangement that stays accurate near `F = 1`; larger dimensions use
/// eigendecomposition-based matrix square roots with roundoff-scale
/// eigenvalues clipped to zero before the root.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    (1.0 - one_minus_fidelity_sq(rho, sigma)).max(0.0).sqrt()
}

/// Bures distance `sqrt(2 - 2 F(rho, sigma))`.
///
/// Computed as `sqrt(2 (1 - F^2) / (1 + F))` so that the distance of nearby
/// states keeps full relative accuracy instead of bottoming out at the
/// rounding floor of `F` itself.
pub fn bures_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let t = one_minus_fidelity_sq(rho, sigma);
    let f = (1.0 - t).max(0.0).sqrt();
    (2.0 * t / (1.0 + f)).sqrt()
}

/// Finite-difference QFI estimate `4 d_B(rho(theta), rho(theta + dtheta))^2
/// / dtheta^2`; converges to the QFI as `dtheta -> 0` wherever the family is
/// smooth with constant support.
pub fn qfi_via_bures_limit(
    family: impl Fn(f64) -> DensityMatrix,
    theta: f64,
    dtheta: f64,
) -> f64 {
    assert!(dtheta > 0.0 && dtheta.is_finite(), "dtheta must be positive");
    assert!(theta.is_finite(), "theta must be finite");
    let d = bures_distance(&family(theta), &family(theta + dtheta));
    4.0 * d * d / (dtheta * dtheta)
}

/// Derivative `-i [K, rho]` of the unitary orbit `exp(-i K t) rho exp(i K t)`
/// at `t = 0`; Hermitian and traceless by construction.
pub fn commutator_derivative(rho: &DensityMatrix, k: &HermitianOperator) -> HermitianOperator {
    let kr = k.matrix() * rho.matrix();
    let rk = rho.matrix() * k.matrix();
    HermitianOperator::symmetrize((&kr - &rk).scale(-Complex64::i()))
}
