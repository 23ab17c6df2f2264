//! States, Kraus channels, unitary families, and the seeded random
//! ensembles: validity gates, hand examples, statistical oracles, and the
//! reproducibility contract of the substream scheme.

mod common;

use approx::assert_abs_diff_eq;
use num_complex::Complex64;

use common::{c, cr, diff_norm, gue, matrix_from, test_rng};
use qmetro_core::channel::{FamilyTag, KrausChannel, UnitaryFamily};
use qmetro_core::hermitian::HermitianOperator;
use qmetro_core::matrix::ComplexMatrix;
use qmetro_core::random::{
    haar_isometry, random_density_matrix, random_hermitian, random_kraus_channel,
    random_pure_state, random_unitary,
};
use qmetro_core::state::{DensityMatrix, PureState};
use qmetro_core::Error;

#[test]
fn pure_state_gates_norm_and_finiteness() {
    assert!(PureState::new(vec![cr(1.0), cr(0.0)]).is_ok());
    assert!(matches!(
        PureState::new(vec![cr(0.7), cr(0.7)]),
        Err(Error::NormViolation { .. })
    ));
    assert!(matches!(PureState::new(vec![]), Err(Error::InvalidDimension(_))));
    assert!(matches!(
        PureState::from_unnormalized(vec![cr(0.0), cr(0.0)]),
        Err(Error::NormViolation { .. })
    ));
    let s = PureState::from_unnormalized(vec![cr(3.0), cr(4.0)]).expect("nonzero");
    assert_abs_diff_eq!(s.amplitudes()[0].re, 0.6, epsilon = 1e-15);
    assert_abs_diff_eq!(s.amplitudes()[1].re, 0.8, epsilon = 1e-15);
}

#[test]
fn canonical_phase_removes_global_phase() {
    let phase = c(0.0, 1.3).exp();
    let base = PureState::from_unnormalized(vec![cr(0.6), c(0.0, 0.8)]).expect("nonzero");
    let rotated = PureState::new(
        base.amplitudes().iter().map(|a| a * phase).collect(),
    )
    .expect("phase keeps the norm");
    let a = base.with_canonical_phase();
    let b = rotated.with_canonical_phase();
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x - y).norm() <= 1e-12);
    }
    assert!(a.amplitudes()[0].im.abs() <= 1e-15);
    assert!(a.amplitudes()[0].re > 0.0);
}

#[test]
fn density_matrix_gates_hermiticity_trace_and_positivity() {
    let skew = matrix_from(&[&[cr(0.5), cr(0.4)], &[cr(-0.4), cr(0.5)]]);
    assert!(matches!(
        DensityMatrix::new(skew),
        Err(Error::NotHermitian { .. })
    ));
    let traced = ComplexMatrix::identity(2);
    assert!(matches!(
        DensityMatrix::new(traced),
        Err(Error::TraceNotOne { .. })
    ));
    let negative = ComplexMatrix::from_diag(&[cr(1.5), cr(-0.5)]);
    assert!(matches!(
        DensityMatrix::new(negative),
        Err(Error::NotPositive { .. })
    ));
    let valid = ComplexMatrix::from_diag(&[cr(0.25); 4]);
    assert_eq!(DensityMatrix::new(valid).expect("valid state").dim(), 4);
}

#[test]
fn density_mixture_validates_weights() {
    let a = DensityMatrix::maximally_mixed(2);
    let b = PureState::basis_state(2, 0).to_density();
    let mixed = DensityMatrix::mix(&[(0.25, &a), (0.75, &b)]).expect("convex");
    assert_abs_diff_eq!(mixed.matrix()[(0, 0)].re, 0.875, epsilon = 1e-15);
    assert!(DensityMatrix::mix(&[(0.5, &a), (0.6, &b)]).is_err());
    assert!(DensityMatrix::mix(&[(-0.1, &a), (1.1, &b)]).is_err());
    let c3 = DensityMatrix::maximally_mixed(3);
    assert!(matches!(
        DensityMatrix::mix(&[(0.5, &a), (0.5, &c3)]),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn identity_channel_acts_trivially() {
    let mut rng = test_rng("channel-identity", 0);
    let rho = random_density_matrix(3, &mut rng);
    let out = KrausChannel::identity(3).apply(&rho).expect("dims match");
    assert!(diff_norm(out.matrix(), rho.matrix()) <= 1e-14);
}

#[test]
fn depolarizing_channel_yields_maximally_mixed() {
    for d in [2, 3] {
        let mut rng = test_rng("channel-depolarize", d as u64);
        let rho = random_density_matrix(d, &mut rng);
        let out = KrausChannel::depolarizing(d).apply(&rho).expect("dims match");
        let expected = ComplexMatrix::identity(d).scale(cr(1.0 / d as f64));
        assert!(diff_norm(out.matrix(), &expected) <= 1e-12);
    }
}

#[test]
fn random_channel_preserves_trace() {
    let mut rng = test_rng("channel-trace", 0);
    let channel = random_kraus_channel(4, 3, &mut rng);
    assert_eq!(channel.rank(), 3);
    let rho = random_density_matrix(4, &mut rng);
    let out = channel.apply(&rho).expect("dims match");
    assert_abs_diff_eq!(out.matrix().trace().re, 1.0, epsilon = 1e-10);
}

#[test]
fn kraus_constructor_rejects_incomplete_sets() {
    let half = ComplexMatrix::identity(2).scale(cr(0.5));
    assert!(matches!(
        KrausChannel::new(vec![half]),
        Err(Error::IncompleteKraus { .. })
    ));
    assert!(KrausChannel::new(vec![]).is_err());
}

#[test]
fn kraus_rotation_leaves_the_channel_action_unchanged() {
    let mut rng = test_rng("kraus-rotation", 0);
    let channel = random_kraus_channel(3, 3, &mut rng);
    let u = random_unitary(3, &mut rng);
    let rotated = channel.rotate(&u).expect("square coefficient matrix");
    for _ in 0..10 {
        let rho = random_density_matrix(3, &mut rng);
        let a = channel.apply(&rho).expect("dims match");
        let b = rotated.apply(&rho).expect("dims match");
        assert!(diff_norm(a.matrix(), b.matrix()) <= 1e-9);
    }
}

#[test]
fn unitary_channels_preserve_spectra() {
    let mut rng = test_rng("unitary-spectrum", 0);
    let rho = random_density_matrix(4, &mut rng);
    let u = random_unitary(4, &mut rng);
    let rotated = rho.evolve_unitary(&u);
    let before = rho.eig();
    let after = rotated.eig();
    for (x, y) in before.values().iter().zip(after.values()) {
        assert_abs_diff_eq!(x, y, epsilon = 1e-9);
    }
}

#[test]
fn phase_shift_family_at_zero() {
    let family = UnitaryFamily::phase_shift(HermitianOperator::pauli_z());
    assert_eq!(family.tag(), FamilyTag::PhaseShift);
    let (u, udot) = family.evaluate(0.0);
    assert!(diff_norm(&u, &ComplexMatrix::identity(2)) <= 1e-14);
    let expected = HermitianOperator::pauli_z().matrix().scale(-Complex64::i());
    assert!(diff_norm(&udot, &expected) <= 1e-14);
}

#[test]
fn diagonal_phase_shift_evaluates_in_closed_form() {
    let g = [0.0, 1.0, 3.0];
    let family = UnitaryFamily::phase_shift(HermitianOperator::from_real_diag(&g));
    let theta = 0.9;
    let (u, udot) = family.evaluate(theta);
    let expected_u =
        ComplexMatrix::from_diag(&g.map(|gk| (-Complex64::i() * (theta * gk)).exp()));
    let expected_udot = ComplexMatrix::from_diag(
        &g.map(|gk| -Complex64::i() * gk * (-Complex64::i() * (theta * gk)).exp()),
    );
    assert!(diff_norm(&u, &expected_u) <= 1e-12);
    assert!(diff_norm(&udot, &expected_udot) <= 1e-12);
}

#[test]
fn family_accessors_are_exact() {
    let g = gue(3, 1.0, "family-exact", 0);
    let theta = 1.7;
    let phase = UnitaryFamily::phase_shift(g.clone());
    assert!(diff_norm(phase.hamiltonian(theta).matrix(), g.scale(theta).matrix()) == 0.0);
    assert!(diff_norm(phase.derivative(theta).matrix(), g.matrix()) == 0.0);

    let h_int = gue(6, 1.0, "family-exact", 1);
    let ext = UnitaryFamily::extended(g.clone(), h_int.clone(), 2).expect("dims match");
    assert_eq!(ext.tag(), FamilyTag::Extended);
    assert_eq!(ext.dim(), 6);
    assert_eq!(ext.ancilla_dim(), Some(2));
    let lifted = g.kron_identity(2);
    assert!(diff_norm(ext.derivative(theta).matrix(), lifted.matrix()) == 0.0);
    let expected_h = lifted.scale(theta).add(&h_int);
    assert!(diff_norm(ext.hamiltonian(theta).matrix(), expected_h.matrix()) == 0.0);
}

#[test]
fn extended_family_rejects_interaction_shape_mismatch() {
    let g = HermitianOperator::pauli_z();
    let wrong = HermitianOperator::zero(3);
    assert!(matches!(
        UnitaryFamily::extended(g, wrong, 2),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn extended_family_derivative_matches_finite_difference() {
    let g = HermitianOperator::pauli_z();
    let h_int = HermitianOperator::pauli_x().kron(&HermitianOperator::pauli_x());
    let family = UnitaryFamily::extended(g, h_int, 2).expect("dims match");
    let theta = 0.7;
    let (_, udot) = family.evaluate(theta);
    let eps = 1e-5;
    let fd = (&family.unitary_at(theta + eps) - &family.unitary_at(theta - eps))
        .scale(cr(1.0 / (2.0 * eps)));
    assert!(diff_norm(&udot, &fd) <= 1e-6);
}

#[test]
fn general_family_follows_its_closures() {
    let family = UnitaryFamily::general(
        2,
        |theta| HermitianOperator::pauli_z().scale(theta * theta),
        |theta| HermitianOperator::pauli_z().scale(2.0 * theta),
    );
    assert_eq!(family.tag(), FamilyTag::General);
    let (u, udot) = family.evaluate(2.0);
    let expected_u = HermitianOperator::pauli_z().unitary_exp(4.0);
    assert!(diff_norm(&u, &expected_u) <= 1e-12);
    let eps = 1e-5;
    let fd = (&family.unitary_at(2.0 + eps) - &family.unitary_at(2.0 - eps))
        .scale(cr(1.0 / (2.0 * eps)));
    assert!(diff_norm(&udot, &fd) <= 1e-6);
}

#[test]
fn random_hermitian_determinism_and_zero_scale() {
    let zero = random_hermitian(4, 0.0, &mut test_rng("gue-zero", 0));
    assert!(zero.matrix().spectral_norm() == 0.0);

    let a = random_hermitian(4, 1.0, &mut test_rng("gue-repeat", 7));
    let b = random_hermitian(4, 1.0, &mut test_rng("gue-repeat", 7));
    assert_eq!(a.matrix().entries(), b.matrix().entries());
    let c = random_hermitian(4, 1.0, &mut test_rng("gue-repeat", 8));
    assert!(diff_norm(a.matrix(), c.matrix()) > 1e-3, "substreams must differ");
}

#[test]
fn random_hermitian_entry_statistics() {
    // GUE entry means over 100 samples at dim 50. Off-diagonal real and
    // imaginary parts have variance 1/2, diagonal entries variance 1; the
    // 3-sigma bands below use the exact counts of each class.
    let dim = 50;
    let samples = 100;
    let mut diag_sum = 0.0;
    let mut diag_count = 0usize;
    let mut off_sum_re = 0.0;
    let mut off_sum_im = 0.0;
    let mut off_count = 0usize;
    for k in 0..samples {
        let h = random_hermitian(dim, 1.0, &mut test_rng("gue-stats", k));
        for i in 0..dim {
            diag_sum += h.matrix()[(i, i)].re;
            diag_count += 1;
            for j in (i + 1)..dim {
                off_sum_re += h.matrix()[(i, j)].re;
                off_sum_im += h.matrix()[(i, j)].im;
                off_count += 1;
            }
        }
    }
    let diag_band = 3.0 * (1.0 / diag_count as f64).sqrt();
    assert!(
        (diag_sum / diag_count as f64).abs() <= diag_band,
        "diagonal mean outside 3 sigma"
    );
    let off_band = 3.0 * (0.5 / off_count as f64).sqrt();
    assert!((off_sum_re / off_count as f64).abs() <= off_band);
    assert!((off_sum_im / off_count as f64).abs() <= off_band);
}

#[test]
fn random_pure_state_norm_and_overlap_statistics() {
    let single = random_pure_state(1, &mut test_rng("haar-one", 0));
    assert_abs_diff_eq!(single.amplitudes()[0].norm(), 1.0, epsilon = 1e-12);

    let mut mean = 0.0;
    let samples = 1000;
    for k in 0..samples {
        let psi = random_pure_state(8, &mut test_rng("haar-overlap", k));
        let norm: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert_abs_diff_eq!(norm.sqrt(), 1.0, epsilon = 1e-12);
        mean += psi.amplitudes()[0].norm_sqr();
    }
    mean /= samples as f64;
    // |<e0|psi>|^2 is Beta(1, 7): mean 1/8, variance 7/576.
    let sigma = (7.0 / 576.0_f64 / samples as f64).sqrt();
    assert!(
        (mean - 0.125).abs() <= 3.0 * sigma,
        "overlap mean {mean} outside 3 sigma of 1/8"
    );
}

#[test]
fn haar_isometry_has_orthonormal_columns() {
    let v = haar_isometry(12, 3, &mut test_rng("isometry", 0));
    let gram = &v.adjoint() * &v;
    assert!(diff_norm(&gram, &ComplexMatrix::identity(3)) <= 1e-12);
}

#[test]
fn rank_one_random_channel_is_a_haar_unitary() {
    let channel = random_kraus_channel(3, 1, &mut test_rng("kraus-unitary", 0));
    assert_eq!(channel.rank(), 1);
    let a = &channel.operators()[0];
    assert!(diff_norm(&(&a.adjoint() * a), &ComplexMatrix::identity(3)) <= 1e-12);
}

#[test]
fn random_channel_completeness_and_mixed_input() {
    let mut rng = test_rng("kraus-complete", 0);
    let channel = random_kraus_channel(3, 4, &mut rng);
    let mut sum = ComplexMatrix::zeros(3, 3);
    for a in channel.operators() {
        sum = &sum + &(&a.adjoint() * a);
    }
    assert!(diff_norm(&sum, &ComplexMatrix::identity(3)) <= 1e-9);
    let out = channel
        .apply(&DensityMatrix::maximally_mixed(3))
        .expect("dims match");
    assert_abs_diff_eq!(out.matrix().trace().re, 1.0, epsilon = 1e-10);
}
