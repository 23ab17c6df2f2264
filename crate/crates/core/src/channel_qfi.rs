//! Channel QFI of unitary families: the maximal quantum Fisher information
//! over input probes.
//!
//! Two independent routes are implemented. The spectral route extracts the
//! local generator `G(theta) = i U^dag dU` and returns the squared spectral
//! spread `(g_max - g_min)^2`, which the optimal probe — an equal
//! superposition of extremal eigenvectors — saturates. The norm route
//! minimizes `4 || dU - i x U ||^2` over the real phase slope `x`; for a
//! one-operator channel the minimization over equivalent Kraus sets reduces
//! to exactly this scalar problem. Agreement of the two routes is part of the
//! certification surface, so neither is ever implemented in terms of the
//! other.

use num_complex::Complex64;

use crate::channel::{FamilyTag, UnitaryFamily};
use crate::error::{Error, Result};
use crate::hermitian::{EigenSystem, HermitianOperator};
use crate::matrix::ComplexMatrix;
use crate::search::{minimize_convex, LineSearch};
use crate::state::PureState;
use crate::tol::Tolerances;

/// How a [`ChannelQfiResult`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfiMethod {
    /// Squared spectral spread of the local generator.
    SpectralSpread,
    /// Scalar norm minimization `4 min_x ||dU - i x U||^2`.
    Eq22Minimization,
    /// Spectral spread of `G` itself for `H(theta) = theta G`.
    PhaseShiftClosedForm,
}

impl QfiMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            QfiMethod::SpectralSpread => "spectral-spread",
            QfiMethod::Eq22Minimization => "eq22-minimization",
            QfiMethod::PhaseShiftClosedForm => "phase-shift-closed-form",
        }
    }
}

/// Channel QFI value plus the artifacts of the route that produced it.
#[derive(Debug, Clone)]
pub struct ChannelQfiResult {
    /// The channel QFI (maximal over probes).
    pub value: f64,
    pub method: QfiMethod,
    /// Minimizing phase slope `x*`; present for the minimization route.
    pub minimizer_x: Option<f64>,
    /// A probe achieving the maximum; present for the spectral routes.
    pub optimal_probe: Option<PureState>,
}

/// A generator recentered so its spectrum is symmetric about zero.
#[derive(Debug, Clone)]
pub struct CenteredGenerator {
    /// `G + shift * I`.
    pub centered: HermitianOperator,
    /// `-(g_min + g_max) / 2`.
    pub shift: f64,
}

/// Extracts the Hermitian local generator `G(theta) = i U^dag dU` from a
/// unitary and its derivative.
///
/// Rejects `U` that is not unitary within `unitary_input`, and inputs whose
/// `i U^dag dU` has an anti-Hermitian part larger than
/// `local_generator_residual` (such a pair cannot come from differentiating a
/// unitary family).
pub fn local_generator(
    u: &ComplexMatrix,
    udot: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<HermitianOperator> {
    if !u.is_square() || u.rows() != udot.rows() || u.cols() != udot.cols() {
        return Err(Error::DimensionMismatch {
            context: "local_generator",
            left: (u.rows(), u.cols()),
            right: (udot.rows(), udot.cols()),
        });
    }
    let d = u.rows();
    let unitarity = (&(&u.adjoint() * u) - &ComplexMatrix::identity(d)).spectral_norm();
    if unitarity > tol.unitary_input {
        return Err(Error::NotUnitary {
            residual: unitarity,
            bound: tol.unitary_input,
        });
    }
    let k = (&u.adjoint() * udot).scale(Complex64::i());
    let anti = (&k - &k.adjoint()).scale(Complex64::new(0.5, 0.0));
    let residual = anti.spectral_norm();
    if residual > tol.local_generator_residual {
        return Err(Error::NotUnitaryFamily {
            residual,
            bound: tol.local_generator_residual,
        });
    }
    Ok(HermitianOperator::symmetrize(k))
}

/// Spread-squared value and saturating probe from an eigensystem of a
/// generator. The probe is the equal superposition of the extremal
/// eigenvectors (or the first eigenvector when the spectrum is a point, in
/// which case every probe is optimal), with its global phase canonicalized.
fn spread_result(es: &EigenSystem, method: QfiMethod) -> ChannelQfiResult {
    let spread = es.spread();
    let d = es.dim();
    let probe = if spread == 0.0 {
        PureState::new(es.eigenvector(0)).expect("eigenvector columns are normalized")
    } else {
        let lo = es.eigenvector(0);
        let hi = es.eigenvector(d - 1);
        let amplitudes: Vec<Complex64> = lo.iter().zip(&hi).map(|(a, b)| a + b).collect();
        PureState::from_unnormalized(amplitudes)
            .expect("sum of orthonormal eigenvectors has norm sqrt(2)")
    };
    ChannelQfiResult {
        value: spread * spread,
        method,
        minimizer_x: None,
        optimal_probe: Some(probe.with_canonical_phase()),
    }
}

/// Channel QFI of a phase-shift family `U(theta) = exp(-i theta G)`: the
/// squared spectral spread of `G`, independent of `theta`.
pub fn channel_qfi_phase_shift(generator: &HermitianOperator) -> ChannelQfiResult {
    spread_result(&generator.eig(), QfiMethod::PhaseShiftClosedForm)
}

/// Channel QFI of an arbitrary unitary family at `theta` via the local
/// generator's spectral spread.
pub fn channel_qfi_unitary(
    family: &UnitaryFamily,
    theta: f64,
    tol: &Tolerances,
) -> Result<ChannelQfiResult> {
    let (u, udot) = family.evaluate(theta);
    let generator = local_generator(&u, &udot, tol)?;
    Ok(spread_result(&generator.eig(), QfiMethod::SpectralSpread))
}

/// Channel QFI at `theta` via the scalar norm minimization
/// `4 min_x || dU - i x U ||^2`, with a golden-section search over `x`.
///
/// The default bracket is `bracket_scale * ||dH/dtheta||` on either side of
/// zero, which always contains the minimizer since `|x*| <= ||dH/dtheta||`;
/// explicit brackets are widened (up to `max_widenings` doublings) if the
/// objective is still decreasing at an endpoint.
pub fn channel_qfi_eq22(
    family: &UnitaryFamily,
    theta: f64,
    search: &LineSearch,
    tol: &Tolerances,
) -> Result<ChannelQfiResult> {
    let (u, udot) = family.evaluate(theta);
    let unitarity =
        (&(&u.adjoint() * &u) - &ComplexMatrix::identity(family.dim())).spectral_norm();
    if unitarity > tol.unitary_input {
        return Err(Error::NotUnitary {
            residual: unitarity,
            bound: tol.unitary_input,
        });
    }
    let objective = |x: f64| (&udot - &u.scale(Complex64::i() * x)).spectral_norm();
    let bracket = match search.bracket {
        Some(b) => b,
        None => {
            let hdot_norm = {
                let es = family.derivative(theta).eig();
                es.min().abs().max(es.max().abs())
            };
            if hdot_norm == 0.0 {
                // Stationary family: dU vanishes and the minimum sits at x = 0.
                let f0 = objective(0.0);
                return Ok(ChannelQfiResult {
                    value: 4.0 * f0 * f0,
                    method: QfiMethod::Eq22Minimization,
                    minimizer_x: Some(0.0),
                    optimal_probe: None,
                });
            }
            let half = search.bracket_scale * hdot_norm;
            (-half, half)
        }
    };
    let (x_star, f_star) = minimize_convex(objective, bracket, search.x_tol, search.max_widenings)?;
    Ok(ChannelQfiResult {
        value: 4.0 * f_star * f_star,
        method: QfiMethod::Eq22Minimization,
        minimizer_x: Some(x_star),
        optimal_probe: None,
    })
}

/// Shifts a generator by `-(g_min + g_max)/2 * I` so its extremal
/// eigenvalues become symmetric; the shift never changes the channel QFI.
pub fn center_generator(generator: &HermitianOperator) -> CenteredGenerator {
    let es = generator.eig();
    let shift = -0.5 * (es.min() + es.max());
    CenteredGenerator {
        centered: generator.shift(shift),
        shift,
    }
}

/// Norm upper bound `4 ||G||^2` on the channel QFI of an extended family,
/// valid for every interaction term.
pub fn upper_bound_norm(family: &UnitaryFamily, theta: f64, tol: &Tolerances) -> Result<f64> {
    if family.tag() != FamilyTag::Extended {
        return Err(Error::WrongFamilyKind { expected: "extended" });
    }
    let g = family.generator().expect("extended families carry a generator");
    let norm = g.matrix().spectral_norm();
    let bound = 4.0 * norm * norm;
    #[cfg(debug_assertions)]
    {
        let minimized = channel_qfi_eq22(family, theta, &LineSearch::from_tolerances(tol), tol)?;
        debug_assert!(
            bound >= minimized.value - tol.qfi_match,
            "norm bound {bound} fell below the minimized channel QFI {}",
            minimized.value
        );
    }
    #[cfg(not(debug_assertions))]
    {
        let _ = theta;
        let _ = tol;
    }
    Ok(bound)
}
