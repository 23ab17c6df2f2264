//! Quantum channels in Kraus form and one-parameter unitary families.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::HermitianOperator;
use crate::matrix::ComplexMatrix;
use crate::state::DensityMatrix;
use crate::tol::Tolerances;

/// Completely positive trace-preserving map `rho -> sum_k A_k rho A_k^dag`.
///
/// Operators map a `dim_in`-dimensional space to a `dim_out`-dimensional one
/// and satisfy the completeness relation `sum_k A_k^dag A_k = I` within the
/// Kraus gate.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Validates shapes and the completeness relation.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::InvalidDimension("Kraus set must be nonempty".into()));
        };
        let (dim_out, dim_in) = (first.rows(), first.cols());
        for op in &operators {
            if (op.rows(), op.cols()) != (dim_out, dim_in) {
                return Err(Error::DimensionMismatch {
                    context: "Kraus operators",
                    left: (dim_out, dim_in),
                    right: (op.rows(), op.cols()),
                });
            }
        }
        let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
        for op in &operators {
            sum = &sum + &(&op.adjoint() * op);
        }
        let residual = (&sum - &ComplexMatrix::identity(dim_in)).spectral_norm();
        if residual > Tolerances::default().kraus_completeness {
            return Err(Error::IncompleteKraus { residual });
        }
        Ok(Self {
            dim_in,
            dim_out,
            operators,
        })
    }

    /// Identity channel.
    pub fn identity(dim: usize) -> Self {
        Self {
            dim_in: dim,
            dim_out: dim,
            operators: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Single-operator channel `rho -> U rho U^dag`; rejects non-unitary `U`.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        if !u.is_square() {
            return Err(Error::InvalidDimension("unitary channel needs a square matrix".into()));
        }
        let residual =
            (&(&u.adjoint() * &u) - &ComplexMatrix::identity(u.cols())).spectral_norm();
        let bound = Tolerances::default().unitary_input;
        if residual > bound {
            return Err(Error::NotUnitary { residual, bound });
        }
        Ok(Self {
            dim_in: u.cols(),
            dim_out: u.rows(),
            operators: vec![u],
        })
    }

    /// Fully depolarizing channel `rho -> tr(rho) I / dim`, with Kraus set
    /// `{ |j><k| / sqrt(dim) }`.
    pub fn depolarizing(dim: usize) -> Self {
        let scale = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        let mut operators = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                let mut m = ComplexMatrix::zeros(dim, dim);
                m.set(j, k, scale);
                operators.push(m);
            }
        }
        Self {
            dim_in: dim,
            dim_out: dim,
            operators,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Number of Kraus operators.
    pub fn rank(&self) -> usize {
        self.operators.len()
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// `sum_k A_k X A_k^dag` on a raw matrix.
    pub fn apply_matrix(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for op in &self.operators {
            out = &out + &(&(op * x) * &op.adjoint());
        }
        out
    }

    /// Applies the channel to a state, revalidating the output.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                context: "channel application",
                left: (self.dim_in, self.dim_in),
                right: (rho.dim(), rho.dim()),
            });
        }
        DensityMatrix::new(self.apply_matrix(rho.matrix()))
    }

    /// Applies the channel to a Hermitian operator (e.g. a state derivative);
    /// the map preserves Hermiticity and trace.
    pub fn apply_hermitian(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        if x.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                context: "channel application",
                left: (self.dim_in, self.dim_in),
                right: (x.dim(), x.dim()),
            });
        }
        Ok(HermitianOperator::symmetrize(self.apply_matrix(x.matrix())))
    }

    /// Equivalent Kraus set `B_j = sum_k coeffs[j][k] A_k` for a unitary
    /// coefficient matrix; represents the same channel.
    pub fn rotate(&self, coeffs: &ComplexMatrix) -> Result<Self> {
        let q = self.rank();
        if coeffs.rows() != q || coeffs.cols() != q {
            return Err(Error::DimensionMismatch {
                context: "Kraus rotation coefficients",
                left: (q, q),
                right: (coeffs.rows(), coeffs.cols()),
            });
        }
        let residual =
            (&(&coeffs.adjoint() * coeffs) - &ComplexMatrix::identity(q)).spectral_norm();
        let bound = Tolerances::default().unitary_input;
        if residual > bound {
            return Err(Error::NotUnitary { residual, bound });
        }
        let mut rotated = Vec::with_capacity(q);
        for j in 0..q {
            let mut b = ComplexMatrix::zeros(self.dim_out, self.dim_in);
            for k in 0..q {
                b = &b + &self.operators[k].scale(coeffs[(j, k)]);
            }
            rotated.push(b);
        }
        Self::new(rotated)
    }
}

/// Which structural kind a [`UnitaryFamily`] has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    /// `H(theta) = theta G`.
    PhaseShift,
    /// `H(theta) = theta (G (x) I) + H_int`.
    Extended,
    /// Arbitrary smooth `H(theta)` given by closures.
    General,
}

type HamiltonianFn = Arc<dyn Fn(f64) -> HermitianOperator + Send + Sync>;

#[derive(Clone)]
enum FamilyKind {
    PhaseShift {
        generator: HermitianOperator,
    },
    Extended {
        generator: HermitianOperator,
        interaction: HermitianOperator,
        ancilla_dim: usize,
        /// Precomputed `G (x) I`, which is both the derivative and the
        /// theta-coefficient of the Hamiltonian.
        lifted: HermitianOperator,
    },
    General {
        hamiltonian: HamiltonianFn,
        derivative: HamiltonianFn,
    },
}

/// One-parameter family of unitaries `U(theta) = exp(-i H(theta))` described
/// by its Hamiltonian curve `theta -> H(theta)` and the exact derivative
/// `dH/dtheta`.
#[derive(Clone)]
pub struct UnitaryFamily {
    dim: usize,
    kind: FamilyKind,
}

impl UnitaryFamily {
    /// Phase-shift family `U(theta) = exp(-i theta G)`.
    pub fn phase_shift(generator: HermitianOperator) -> Self {
        Self {
            dim: generator.dim(),
            kind: FamilyKind::PhaseShift { generator },
        }
    }

    /// Extension `U(theta) = exp(-i (theta G (x) I + H_int))` on the probe
    /// plus an `ancilla_dim`-dimensional ancilla.
    pub fn extended(
        generator: HermitianOperator,
        interaction: HermitianOperator,
        ancilla_dim: usize,
    ) -> Result<Self> {
        if ancilla_dim == 0 {
            return Err(Error::InvalidDimension("ancilla dimension must be at least 1".into()));
        }
        let dim = generator.dim() * ancilla_dim;
        if interaction.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: "extension interaction",
                left: (dim, dim),
                right: (interaction.dim(), interaction.dim()),
            });
        }
        let lifted = generator.kron_identity(ancilla_dim);
        Ok(Self {
            dim,
            kind: FamilyKind::Extended {
                generator,
                interaction,
                ancilla_dim,
                lifted,
            },
        })
    }

    /// Family defined by arbitrary Hamiltonian and derivative closures, both
    /// returning `dim`-dimensional operators.
    pub fn general(
        dim: usize,
        hamiltonian: impl Fn(f64) -> HermitianOperator + Send + Sync + 'static,
        derivative: impl Fn(f64) -> HermitianOperator + Send + Sync + 'static,
    ) -> Self {
        Self {
            dim,
            kind: FamilyKind::General {
                hamiltonian: Arc::new(hamiltonian),
                derivative: Arc::new(derivative),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> FamilyTag {
        match &self.kind {
            FamilyKind::PhaseShift { .. } => FamilyTag::PhaseShift,
            FamilyKind::Extended { .. } => FamilyTag::Extended,
            FamilyKind::General { .. } => FamilyTag::General,
        }
    }

    /// The probe-space generator `G` for phase-shift and extended kinds.
    pub fn generator(&self) -> Option<&HermitianOperator> {
        match &self.kind {
            FamilyKind::PhaseShift { generator } => Some(generator),
            FamilyKind::Extended { generator, .. } => Some(generator),
            FamilyKind::General { .. } => None,
        }
    }

    /// The theta-independent interaction term of an extended family.
    pub fn interaction(&self) -> Option<&HermitianOperator> {
        match &self.kind {
            FamilyKind::Extended { interaction, .. } => Some(interaction),
            _ => None,
        }
    }

    pub fn ancilla_dim(&self) -> Option<usize> {
        match &self.kind {
            FamilyKind::Extended { ancilla_dim, .. } => Some(*ancilla_dim),
            _ => None,
        }
    }

    /// `H(theta)`.
    pub fn hamiltonian(&self, theta: f64) -> HermitianOperator {
        assert!(theta.is_finite(), "theta must be finite");
        match &self.kind {
            FamilyKind::PhaseShift { generator } => generator.scale(theta),
            FamilyKind::Extended {
                interaction, lifted, ..
            } => lifted.scale(theta).add(interaction),
            FamilyKind::General { hamiltonian, .. } => hamiltonian(theta),
        }
    }

    /// `dH/dtheta` at `theta`.
    pub fn derivative(&self, theta: f64) -> HermitianOperator {
        assert!(theta.is_finite(), "theta must be finite");
        match &self.kind {
            FamilyKind::PhaseShift { generator } => generator.clone(),
            FamilyKind::Extended { lifted, .. } => lifted.clone(),
            FamilyKind::General { derivative, .. } => derivative(theta),
        }
    }

    /// `U(theta)` alone, for callers that do not need the derivative.
    pub fn unitary_at(&self, theta: f64) -> ComplexMatrix {
        self.hamiltonian(theta).unitary_exp(1.0)
    }

    /// `(U(theta), dU/dtheta)`, sharing one eigendecomposition of `H(theta)`.
    pub fn evaluate(&self, theta: f64) -> (ComplexMatrix, ComplexMatrix) {
        let h = self.hamiltonian(theta);
        let hdot = self.derivative(theta);
        let es = h.eig();
        let u = es.apply_function(|lambda| (-Complex64::i() * lambda).exp());
        let udot = es.exp_derivative(&hdot);
        debug_assert!(
            (&(&u.adjoint() * &u) - &ComplexMatrix::identity(self.dim)).spectral_norm()
                <= Tolerances::default().unitarity,
            "computed U(theta) is not unitary"
        );
        (u, udot)
    }
}

impl fmt::Debug for UnitaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnitaryFamily")
            .field("dim", &self.dim)
            .field("tag", &self.tag())
            .finish()
    }
}
