//! Shared helpers for the integration suites.

#![allow(dead_code)]

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use qmetro_core::hermitian::HermitianOperator;
use qmetro_core::matrix::ComplexMatrix;
use qmetro_core::random::{random_hermitian, RngStream};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Builds a matrix from row slices of complex literals.
pub fn matrix_from(rows: &[&[Complex64]]) -> ComplexMatrix {
    let r = rows.len();
    let cols = rows[0].len();
    let data: Vec<Complex64> = rows.iter().flat_map(|row| row.iter().copied()).collect();
    ComplexMatrix::new(r, cols, data).expect("literal matrix is well formed")
}

/// Spectral norm of the difference of two matrices.
pub fn diff_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).spectral_norm()
}

/// Deterministic generator for test randomness: substream `index` of the
/// label under master seed 0xC0FFEE.
pub fn test_rng(label: &str, index: u64) -> ChaCha8Rng {
    RngStream::new(0xC0FFEE).substream(label, index)
}

/// A reproducible GUE operator.
pub fn gue(dim: usize, scale: f64, label: &str, index: u64) -> HermitianOperator {
    random_hermitian(dim, scale, &mut test_rng(label, index))
}

/// Central finite difference of `theta -> exp(-i (H + theta Hdot))` at 0.
pub fn exp_derivative_fd(h: &HermitianOperator, hdot: &HermitianOperator, eps: f64) -> ComplexMatrix {
    let plus = h.add(&hdot.scale(eps)).unitary_exp(1.0);
    let minus = h.add(&hdot.scale(-eps)).unitary_exp(1.0);
    (&plus - &minus).scale(cr(1.0 / (2.0 * eps)))
}
