mod common;

use common::*;
use spinpair_core::entanglement::{
    concurrence_general, concurrence_xstate, pure_concurrence, spin_flip, wootters_lambdas,
};
use spinpair_core::qmat::{hermitian_eigen, kron, matrix_sqrt, ComplexMatrix};

#[test]
fn general_matches_pure_formula_on_random_pure_states() {
    let mut rng = rng(21);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let psi = random_pure_state(&mut rng);
        let general = concurrence_general(&ComplexMatrix::projector(&psi)).unwrap().value();
        let pure = pure_concurrence(&psi).unwrap().value();
        worst = worst.max((general - pure).abs());
    }
    assert!(worst <= 1e-8, "worst deviation {worst:e}");
}

#[test]
fn general_matches_xstate_formula_on_random_xstates() {
    let mut rng = rng(22);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let x = random_xstate(&mut rng);
        let general = concurrence_general(&x.to_matrix()).unwrap().value();
        let closed = concurrence_xstate(&x).unwrap().value();
        worst = worst.max((general - closed).abs());
    }
    assert!(worst <= 1e-8, "worst deviation {worst:e}");
}

#[test]
fn concurrence_is_local_unitary_invariant() {
    let mut rng = rng(23);
    for _ in 0..500 {
        let rho = if rng.random_bool(0.5) {
            random_mixed_state(&mut rng, 4)
        } else {
            ComplexMatrix::projector(&random_pure_state(&mut rng))
        };
        let u = kron(&random_unitary_2(&mut rng), &random_unitary_2(&mut rng));
        let rotated = &(&u * &rho) * &u.adjoint();
        let a = concurrence_general(&rho).unwrap().value();
        let b = concurrence_general(&rotated).unwrap().value();
        assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    }
}

#[test]
fn lambdas_are_real_and_nonnegative() {
    let mut rng = rng(24);
    for _ in 0..1000 {
        let rho = random_mixed_state(&mut rng, 4);
        let l = wootters_lambdas(&rho).unwrap();
        assert!(l.iter().all(|&x| x >= -1e-10));
        assert!(l.windows(2).all(|w| w[0] >= w[1]));
    }
}

/// Cross-check against the eigenvalues of `√ρ ρ̃ √ρ` on full-rank states,
/// where taking their square root is well conditioned.
#[test]
fn lambdas_square_to_eigenvalues_of_rho_rho_tilde() {
    let mut rng = rng(25);
    for _ in 0..300 {
        let rho = random_mixed_state(&mut rng, 4);
        let s = matrix_sqrt(&rho).unwrap();
        let r = &(&s * &spin_flip(&rho)) * &s;
        let r = ComplexMatrix::from_fn(4, |i, j| (r[(i, j)] + r[(j, i)].conj()) * 0.5);
        let mut ev = hermitian_eigen(&r).unwrap().values;
        ev.reverse();
        let l = wootters_lambdas(&rho).unwrap();
        for (lam, e) in l.iter().zip(ev) {
            assert!((lam * lam - e).abs() < 1e-12, "{} vs {e}", lam * lam);
        }
    }
}

#[test]
fn concurrence_stays_in_unit_interval() {
    let mut rng = rng(26);
    for _ in 0..2000 {
        let c = concurrence_general(&random_mixed_state(&mut rng, 4)).unwrap().value();
        assert!((0.0..=1.0 + 1e-12).contains(&c));
    }
}

use rand::Rng;
