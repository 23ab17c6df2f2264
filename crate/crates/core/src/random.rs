//! Deterministic random ensembles: GUE Hermitian operators, Haar-distributed
//! states and unitaries, and random Kraus channels.
//!
//! Reproducibility contract: a master seed owns a family of independent
//! substreams addressed by `(label, index)`. The substream key is hashed
//! (SHA-256) into a ChaCha seed, so adding a new labelled stream never
//! perturbs existing ones and parallel consumers can draw without
//! coordination.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sha2::{Digest, Sha256};

use crate::channel::KrausChannel;
use crate::hermitian::HermitianOperator;
use crate::matrix::ComplexMatrix;
use crate::state::{DensityMatrix, PureState};

/// Factory of independent, reproducible random substreams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    master_seed: u64,
}

impl RngStream {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Independent generator for `(label, index)`; the same key always yields
    /// the same stream.
    pub fn substream(&self, label: &str, index: u64) -> ChaCha8Rng {
        let mut hasher = Sha256::new();
        hasher.update(self.master_seed.to_le_bytes());
        // Length-prefix the label so ("ab", 1) and ("a", ...) cannot collide.
        hasher.update((label.len() as u64).to_le_bytes());
        hasher.update(label.as_bytes());
        hasher.update(index.to_le_bytes());
        let digest = hasher.finalize();
        let mut seed = [0u8; 32];
        seed.copy_from_slice(&digest);
        ChaCha8Rng::from_seed(seed)
    }
}

fn standard_complex(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..rows * cols).map(|_| standard_complex(rng)).collect();
    ComplexMatrix::new(rows, cols, data).expect("Gaussian entries are finite")
}

/// GUE-distributed Hermitian operator `scale * (X + X^dag) / 2` with `X` a
/// matrix of independent standard complex Gaussians.
pub fn random_hermitian(dim: usize, scale: f64, rng: &mut impl Rng) -> HermitianOperator {
    assert!(dim >= 1, "dimension must be at least 1");
    assert!(scale.is_finite(), "scale must be finite");
    HermitianOperator::symmetrize(ginibre(dim, dim, rng)).scale(scale)
}

/// Haar-distributed pure state (normalized Gaussian vector).
pub fn random_pure_state(dim: usize, rng: &mut impl Rng) -> PureState {
    assert!(dim >= 1, "dimension must be at least 1");
    let v: Vec<Complex64> = (0..dim).map(|_| standard_complex(rng)).collect();
    PureState::from_unnormalized(v).expect("Gaussian vector is nonzero almost surely")
}

/// Haar-distributed isometry: `rows x cols` matrix with orthonormal columns
/// (`rows >= cols`), from the phase-fixed QR factor of a Ginibre matrix.
pub fn haar_isometry(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(cols >= 1 && rows >= cols, "isometry needs rows >= cols >= 1");
    let qr = ginibre(rows, cols, rng).to_nalgebra().qr();
    let q = qr.q();
    let r = qr.r();
    // Fix the column phases so R has a positive real diagonal; this makes the
    // distribution exactly Haar rather than QR-convention dependent.
    ComplexMatrix::from_fn(rows, cols, |i, j| {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        q[(i, j)] * phase
    })
}

/// Haar-distributed unitary.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    haar_isometry(dim, dim, rng)
}

/// Random channel with `rank` Kraus operators on a `dim`-dimensional space,
/// obtained by slicing a Haar isometry `V : C^dim -> C^(rank * dim)` into
/// `rank` blocks; completeness holds by construction.
pub fn random_kraus_channel(dim: usize, rank: usize, rng: &mut impl Rng) -> KrausChannel {
    assert!(rank >= 1, "channel needs at least one Kraus operator");
    let v = haar_isometry(rank * dim, dim, rng);
    let operators: Vec<ComplexMatrix> = (0..rank)
        .map(|k| ComplexMatrix::from_fn(dim, dim, |i, j| v[(k * dim + i, j)]))
        .collect();
    KrausChannel::new(operators).expect("isometry slices satisfy completeness")
}

/// Full-rank random density matrix `M M^dag / tr(M M^dag)`.
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let m = ginibre(dim, dim, rng);
    let prod = &m * &m.adjoint();
    let trace = prod.trace().re;
    DensityMatrix::new(prod.scale(Complex64::new(1.0 / trace, 0.0)))
        .expect("Gram matrix is a valid state after normalization")
}
