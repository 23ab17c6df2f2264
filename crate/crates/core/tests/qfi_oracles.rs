//! State-level QFI: the SLD route against hand-computed values, the
//! pure-state shortcut, Bures distance/fidelity closed forms, and the
//! finite-difference limit as an independent oracle.

mod common;

use approx::assert_abs_diff_eq;
use num_complex::Complex64;

use common::{c, cr, diff_norm, gue, matrix_from, test_rng};
use qmetro_core::channel::UnitaryFamily;
use qmetro_core::hermitian::HermitianOperator;
use qmetro_core::matrix::ComplexMatrix;
use qmetro_core::qfi::{
    bures_distance, commutator_derivative, fidelity, qfi_pure, qfi_via_bures_limit, sld_and_qfi,
};
use qmetro_core::random::{random_density_matrix, random_hermitian, random_pure_state};
use qmetro_core::state::{DensityMatrix, PureState};
use qmetro_core::tol::Tolerances;
use qmetro_core::Error;

fn plus_state() -> PureState {
    PureState::from_unnormalized(vec![cr(1.0), cr(1.0)]).expect("|+> is nonzero")
}

/// rho = (I + 0.6 sigma_x) / 2, the r = 0.6 equatorial Bloch state.
fn bloch_06() -> DensityMatrix {
    DensityMatrix::new(matrix_from(&[
        &[cr(0.5), cr(0.3)],
        &[cr(0.3), cr(0.5)],
    ]))
    .expect("valid state")
}

#[test]
fn sld_vanishing_derivative_gives_zero() {
    let tol = Tolerances::default();
    let rho = DensityMatrix::maximally_mixed(3);
    let result = sld_and_qfi(&rho, &HermitianOperator::zero(3), &tol).expect("valid input");
    assert_eq!(result.qfi, 0.0);
    assert!(result.sld.matrix().spectral_norm() <= 1e-14);
    assert_eq!(result.support_rank, 3);
}

#[test]
fn sld_pure_phase_shift_gives_four() {
    let tol = Tolerances::default();
    let rho = plus_state().to_density();
    let rho_dot = commutator_derivative(&rho, &HermitianOperator::pauli_z());
    let result = sld_and_qfi(&rho, &rho_dot, &tol).expect("valid input");
    assert_abs_diff_eq!(result.qfi, 4.0, epsilon = 1e-10);
    assert_eq!(result.support_rank, 1);
}

#[test]
fn sld_bloch_rotation_gives_r_squared() {
    let tol = Tolerances::default();
    let rho = bloch_06();
    // Generator sigma_z / 2 rotates the Bloch vector at unit angular speed.
    let rho_dot = commutator_derivative(&rho, &HermitianOperator::pauli_z().scale(0.5));
    let result = sld_and_qfi(&rho, &rho_dot, &tol).expect("valid input");
    assert_abs_diff_eq!(result.qfi, 0.36, epsilon = 1e-12);
    assert_eq!(result.support_rank, 2);
}

#[test]
fn sld_satisfies_the_lyapunov_relation_on_the_support() {
    let tol = Tolerances::default();
    for k in 0..4 {
        let mut rng = test_rng("sld-lyapunov", k);
        let rho = random_density_matrix(4, &mut rng);
        let rho_dot = commutator_derivative(&rho, &random_hermitian(4, 1.0, &mut rng));
        let result = sld_and_qfi(&rho, &rho_dot, &tol).expect("valid input");
        let l = result.sld.matrix();
        let recombined = &(l * rho.matrix()) + &(rho.matrix() * l);
        let residual = diff_norm(&rho_dot.matrix().scale(cr(2.0)), &recombined);
        assert!(residual <= 1e-8, "Lyapunov residual {residual}");
        assert!(result.qfi >= 0.0);
    }

    // Rank-deficient case: restrict the residual to the support projector.
    let psi = random_pure_state(3, &mut test_rng("sld-lyapunov-pure", 0));
    let rho = psi.to_density();
    let k = gue(3, 1.0, "sld-lyapunov-pure", 1);
    let rho_dot = commutator_derivative(&rho, &k);
    let result = sld_and_qfi(&rho, &rho_dot, &tol).expect("valid input");
    assert_eq!(result.support_rank, 1);
    let es = rho.eig();
    let cutoff = tol.sld_cutoff_rel;
    let projector = es.apply_function(|lambda| cr(if lambda > cutoff { 1.0 } else { 0.0 }));
    let l = result.sld.matrix();
    let gap = &rho_dot.matrix().scale(cr(2.0)) - &(&(l * rho.matrix()) + &(rho.matrix() * l));
    let restricted = &(&projector * &gap) * &projector;
    assert!(restricted.spectral_norm() <= 1e-8);
}

#[test]
fn sld_rejects_traced_and_mismatched_derivatives() {
    let tol = Tolerances::default();
    let rho = DensityMatrix::maximally_mixed(2);
    assert!(matches!(
        sld_and_qfi(&rho, &HermitianOperator::scaled_identity(2, 1.0), &tol),
        Err(Error::NotTraceless { .. })
    ));
    assert!(matches!(
        sld_and_qfi(&rho, &HermitianOperator::zero(3), &tol),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn qfi_pure_hand_values() {
    let plus = plus_state();
    assert_eq!(qfi_pure(&plus, &[cr(0.0), cr(0.0)]), 0.0);

    // d/dtheta e^{-i theta Z} |+> at 0 is -i Z |+>.
    let psi_dot: Vec<Complex64> = plus
        .amplitudes()
        .iter()
        .zip([1.0, -1.0])
        .map(|(a, z)| -Complex64::i() * z * a)
        .collect();
    assert_abs_diff_eq!(qfi_pure(&plus, &psi_dot), 4.0, epsilon = 1e-12);

    // Equal superposition of the extreme eigenvectors of diag(0, 1, 3)
    // saturates the variance bound: 4 Var = (3 - 0)^2 = 9.
    let opt = PureState::from_unnormalized(vec![cr(1.0), cr(0.0), cr(1.0)]).expect("nonzero");
    let g = [0.0, 1.0, 3.0];
    let opt_dot: Vec<Complex64> = opt
        .amplitudes()
        .iter()
        .zip(g)
        .map(|(a, gk)| -Complex64::i() * gk * a)
        .collect();
    assert_abs_diff_eq!(qfi_pure(&opt, &opt_dot), 9.0, epsilon = 1e-12);
}

#[test]
fn qfi_pure_agrees_with_sld_on_rank_one_states() {
    let tol = Tolerances::default();
    for k in 0..5 {
        let mut rng = test_rng("pure-vs-sld", k);
        let psi = random_pure_state(4, &mut rng);
        let gen = random_hermitian(4, 1.0, &mut rng);
        let psi_dot: Vec<Complex64> = gen
            .matrix()
            .mul_vec(psi.amplitudes())
            .into_iter()
            .map(|z| -Complex64::i() * z)
            .collect();
        let pure = qfi_pure(&psi, &psi_dot);
        let rho = psi.to_density();
        let rho_dot = commutator_derivative(&rho, &gen);
        let mixed = sld_and_qfi(&rho, &rho_dot, &tol).expect("valid input").qfi;
        assert_abs_diff_eq!(pure, mixed, epsilon = 1e-8);
    }
}

#[test]
fn bures_distance_hand_values() {
    let rho = bloch_06();
    assert!(bures_distance(&rho, &rho) <= 1e-9);

    let zero = PureState::basis_state(2, 0).to_density();
    let one = PureState::basis_state(2, 1).to_density();
    assert_abs_diff_eq!(
        bures_distance(&zero, &one),
        std::f64::consts::SQRT_2,
        epsilon = 1e-12
    );

    // F(I/2, |0><0|) = 1/sqrt(2), so d_B = sqrt(2 - sqrt(2)).
    let mixed = DensityMatrix::maximally_mixed(2);
    assert_abs_diff_eq!(fidelity(&mixed, &zero), std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-12);
    assert_abs_diff_eq!(
        bures_distance(&mixed, &zero),
        (2.0 - std::f64::consts::SQRT_2).sqrt(),
        epsilon = 1e-12
    );
}

#[test]
fn bures_distance_is_symmetric_and_bounded() {
    for k in 0..5 {
        let mut rng = test_rng("bures-symmetry", k);
        let rho = random_density_matrix(3, &mut rng);
        let sigma = random_density_matrix(3, &mut rng);
        let ab = bures_distance(&rho, &sigma);
        let ba = bures_distance(&sigma, &rho);
        assert_abs_diff_eq!(ab, ba, epsilon = 1e-9);
        assert!(ab >= 0.0 && ab <= std::f64::consts::SQRT_2 + 1e-12);
    }
}

#[test]
fn bures_limit_hand_values() {
    let constant = |_: f64| DensityMatrix::maximally_mixed(2);
    assert!(qfi_via_bures_limit(constant, 0.3, 1e-4) <= 1e-12);

    let family = UnitaryFamily::phase_shift(HermitianOperator::pauli_z());
    let plus = plus_state().to_density();
    let orbit = |t: f64| plus.evolve_unitary(&family.unitary_at(t));
    let estimate = qfi_via_bures_limit(orbit, 0.0, 1e-4);
    assert!((estimate - 4.0).abs() <= 4.0 * 1e-4, "estimate {estimate}");

    let slow = UnitaryFamily::phase_shift(HermitianOperator::pauli_z().scale(0.5));
    let rho = bloch_06();
    let rotation = |t: f64| rho.evolve_unitary(&slow.unitary_at(t));
    let estimate = qfi_via_bures_limit(rotation, 0.0, 1e-4);
    assert!((estimate - 0.36).abs() <= 0.36 * 1e-3, "estimate {estimate}");
}

#[test]
fn bures_limit_error_contracts_at_second_order() {
    // Phase-shift orbit of |+> under sigma_z, built entry-by-entry so the
    // diagonal is exactly 1/2 at every point: at the smallest step the
    // discretization error under test is ~2e-8, and matrix-product roundoff
    // in an evolve-based orbit is enough to drown it.
    let orbit = |t: f64| {
        let off = Complex64::new(0.5 * (2.0 * t).cos(), -0.5 * (2.0 * t).sin());
        let half = cr(0.5);
        DensityMatrix::new(
            ComplexMatrix::new(2, 2, vec![half, off, off.conj(), half]).expect("finite"),
        )
        .expect("valid state")
    };
    let tol = Tolerances::default();
    let plus = plus_state().to_density();
    let rho_dot = commutator_derivative(&plus, &HermitianOperator::pauli_z());
    let reference = sld_and_qfi(&plus, &rho_dot, &tol).expect("valid input").qfi;
    let mut errors = Vec::new();
    for dtheta in [1e-3, 5e-4, 2.5e-4] {
        errors.push((qfi_via_bures_limit(&orbit, 0.0, dtheta) - reference).abs());
    }
    for pair in errors.windows(2) {
        let ratio = pair[0] / pair[1];
        assert!(
            (2.8..=5.2).contains(&ratio),
            "halving the step contracted the error by {ratio}, not ~4"
        );
    }
}

#[test]
fn commutator_derivative_is_traceless_hermitian_and_matches_fd() {
    let mut rng = test_rng("commutator-fd", 0);
    let rho = random_density_matrix(3, &mut rng);
    let k = random_hermitian(3, 1.0, &mut rng);
    let derivative = commutator_derivative(&rho, &k);
    assert!(derivative.matrix().trace().norm() <= 1e-12);

    let eps = 1e-6;
    let family = UnitaryFamily::phase_shift(k);
    let plus = rho.evolve_unitary(&family.unitary_at(eps));
    let minus = rho.evolve_unitary(&family.unitary_at(-eps));
    let fd = (plus.matrix() - minus.matrix()).scale(cr(1.0 / (2.0 * eps)));
    assert!(diff_norm(derivative.matrix(), &fd) <= 1e-8);
}

#[test]
fn fidelity_of_identical_and_orthogonal_states() {
    let mut rng = test_rng("fidelity-range", 0);
    let rho = random_density_matrix(3, &mut rng);
    assert_abs_diff_eq!(fidelity(&rho, &rho), 1.0, epsilon = 1e-10);
    let zero = PureState::basis_state(2, 0).to_density();
    let one = PureState::basis_state(2, 1).to_density();
    assert!(fidelity(&zero, &one).abs() <= 1e-12);
}

#[test]
fn sld_support_cutoff_handles_embedded_pure_states() {
    // A pure state embedded in d = 4 leaves three zero eigenvalues; the
    // support-restricted QFI must still match the pure-state formula.
    let tol = Tolerances::default();
    let amps = vec![c(0.5, 0.0), c(0.0, 0.5), cr(0.5), c(0.5, 0.0)];
    let psi = PureState::new(amps).expect("normalized");
    let gen = gue(4, 1.0, "sld-cutoff", 0);
    let rho = psi.to_density();
    let rho_dot = commutator_derivative(&rho, &gen);
    let via_sld = sld_and_qfi(&rho, &rho_dot, &tol).expect("valid input");
    let psi_dot: Vec<Complex64> = gen
        .matrix()
        .mul_vec(psi.amplitudes())
        .into_iter()
        .map(|z| -Complex64::i() * z)
        .collect();
    let via_pure = qfi_pure(&psi, &psi_dot);
    assert_abs_diff_eq!(via_sld.qfi, via_pure, epsilon = 1e-8);
    assert_eq!(via_sld.support_rank, 1);
}
