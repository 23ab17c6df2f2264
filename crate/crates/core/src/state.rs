//! Pure states and density matrices with their validity gates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{EigenSystem, HermitianOperator};
use crate::matrix::ComplexMatrix;
use crate::tol::Tolerances;

/// Normalized complex state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Accepts an amplitude vector whose norm deviates from one by at most
    /// the pure-state gate.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("state needs at least one amplitude".into()));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > Tolerances::default().pure_norm {
            return Err(Error::NormViolation { deviation });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector into a state.
    pub fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("state needs at least one amplitude".into()));
        }
        if !amplitudes
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
        {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NormViolation { deviation: 1.0 });
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z * inv).collect(),
        })
    }

    /// Computational basis state `|k>`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `U |self>` for (numerically) unitary `U`; the result keeps the exact
    /// product amplitudes, so `U` must preserve norm within the state gate.
    pub fn evolve(&self, u: &ComplexMatrix) -> Self {
        assert_eq!(u.cols(), self.dim(), "evolution dimension mismatch");
        assert!(u.is_square(), "evolution operator must be square");
        let amplitudes = u.mul_vec(&self.amplitudes);
        debug_assert!(
            (amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs()
                <= Tolerances::default().pure_norm,
            "evolution did not preserve the norm; operator is not unitary"
        );
        Self { amplitudes }
    }

    /// Rank-one projector `|self><self|`.
    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dim();
        let m = ComplexMatrix::from_fn(d, d, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix::from_matrix_unchecked(m)
    }

    /// Fixes the global phase so the first amplitude above the cutoff is real
    /// and positive; used to make reported probes deterministic.
    pub fn with_canonical_phase(&self) -> Self {
        let pivot = self
            .amplitudes
            .iter()
            .find(|z| z.norm() > 1e-12)
            .copied()
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        Self {
            amplitudes: self.amplitudes.iter().map(|z| z * phase).collect(),
        }
    }
}

/// Positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (then symmetrizes), unit trace, and positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let tol = Tolerances::default();
        let herm = HermitianOperator::with_tolerance(m, tol.hermiticity_rel)?;
        let trace = herm.matrix().trace();
        let deviation = (trace.re - 1.0).abs().max(trace.im.abs());
        if deviation > tol.state_trace {
            return Err(Error::TraceNotOne { deviation });
        }
        let min_eigenvalue = herm.eig().min();
        if min_eigenvalue < -tol.state_psd {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self {
            matrix: herm.matrix().clone(),
        })
    }

    /// Wraps a matrix that is a valid state by construction (exactly
    /// Hermitian, unit trace, PSD up to roundoff). Crate-internal producers
    /// only; debug builds still verify.
    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Self {
        debug_assert!(m.is_square());
        debug_assert!((m.trace().re - 1.0).abs() <= 1e-9, "trace drifted from one");
        Self { matrix: m }
    }

    /// `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { matrix: m }
    }

    /// Convex mixture of states; weights must be nonnegative and sum to one.
    pub fn mix(components: &[(f64, &DensityMatrix)]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidConfig("mixture needs at least one component".into()));
        }
        let dim = components[0].1.dim();
        let mut weight_sum = 0.0;
        for &(w, dm) in components {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "mixture weight {w} must be nonnegative and finite"
                )));
            }
            if dm.dim() != dim {
                return Err(Error::DimensionMismatch {
                    context: "mixture",
                    left: (dim, dim),
                    right: (dm.dim(), dm.dim()),
                });
            }
            weight_sum += w;
        }
        if (weight_sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!(
                "mixture weights sum to {weight_sum}, expected 1"
            )));
        }
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for &(w, dm) in components {
            acc = &acc + &dm.matrix.scale(Complex64::new(w, 0.0));
        }
        Ok(Self { matrix: acc })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigendecomposition (ascending eigenvalues).
    pub fn eig(&self) -> EigenSystem {
        HermitianOperator::symmetrize(self.matrix.clone()).eig()
    }

    /// `U rho U^dag` for unitary `U`.
    pub fn evolve_unitary(&self, u: &ComplexMatrix) -> Self {
        assert_eq!(u.cols(), self.dim(), "evolution dimension mismatch");
        let rotated = &(u * &self.matrix) * &u.adjoint();
        // Unitary conjugation preserves Hermiticity up to roundoff; restore it
        // exactly so downstream gates see a clean state.
        let herm = HermitianOperator::symmetrize(rotated);
        Self::from_matrix_unchecked(herm.matrix().clone())
    }
}
