mod common;

use common::rng;
use proptest::prelude::*;
use rand::Rng;
use spinpair_core::model::{build_hamiltonian, closed_form_spectrum, ground_phase, PairParams, PhaseLabel};
use spinpair_core::qmat::hermitian_eigen;
use spinpair_core::thermal::{
    concurrence_closed_form, concurrence_oracle, gibbs_matrix_oracle, gibbs_xstate, is_entangled,
    threshold_temperature, CouplingSign, ThermalPoint,
};

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn point(j: f64, bf: f64, xi: f64, t: f64) -> ThermalPoint {
    ThermalPoint::new(PairParams::from_xi(j, bf, xi).unwrap(), t).unwrap()
}

fn closed(j: f64, bf: f64, xi: f64, t: f64) -> f64 {
    concurrence_closed_form(&point(j, bf, xi, t)).unwrap().value()
}

#[test]
fn closed_form_spectrum_matches_eigensolver() {
    let mut rng = rng(31);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let j = rng.random_range(0.1..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let p = PairParams::new(j, rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0)).unwrap();
        let mut closed = closed_form_spectrum(&p).energies;
        closed.sort_by(f64::total_cmp);
        let numeric = hermitian_eigen(&build_hamiltonian(&p)).unwrap().values;
        for (a, b) in closed.iter().zip(&numeric) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn phase_boundaries_are_degenerate() {
    for bf in linspace(0.0, 5.0, 50) {
        let spec = closed_form_spectrum(&PairParams::from_xi(-1.0, bf, bf + 1.0).unwrap());
        assert!((spec.energies[1] - spec.energies[2]).abs() <= 1e-12);
    }
    for bf in linspace(2.0, 7.0, 50) {
        let spec = closed_form_spectrum(&PairParams::from_xi(1.0, bf, bf - 1.0).unwrap());
        assert!((spec.energies[1] - spec.energies[3]).abs() <= 1e-12);
    }
}

#[test]
fn closed_form_matches_oracle_on_grid() {
    let mut worst = 0.0f64;
    for j in [-1.0, 1.0] {
        for bf in linspace(0.0, 3.0, 10) {
            for xi in linspace(1.0, 2.0, 10) {
                for t in linspace(0.05, 5.0, 10) {
                    let pt = point(j, bf, xi, t);
                    let a = concurrence_closed_form(&pt).unwrap().value();
                    let b = concurrence_oracle(&pt).unwrap().value();
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-10, "worst {worst:e}");
}

#[test]
fn gibbs_xstate_matches_spectral_gibbs_matrix() {
    let mut rng = rng(32);
    for _ in 0..300 {
        let j = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let p = PairParams::new(j, rng.random_range(0.0..3.0), rng.random_range(-1.7..1.7)).unwrap();
        let pt = ThermalPoint::new(p, rng.random_range(0.05..5.0)).unwrap();
        let x = gibbs_xstate(&pt).unwrap();
        x.validate().unwrap();
        assert!(x.z.abs() <= x.w + 1e-12);
        let rho = gibbs_matrix_oracle(&pt).unwrap();
        assert!(rho.max_abs_diff(&x.to_matrix()) <= 1e-10);
    }
}

#[test]
fn low_temperature_reaches_ground_concurrence() {
    for j in [-1.0, 1.0] {
        for bf in linspace(0.0, 3.0, 13) {
            for xi in linspace(1.0, 2.0, 11) {
                let p = PairParams::from_xi(j, bf, xi).unwrap();
                let g = ground_phase(&p);
                let margin = (xi - spinpair_core::model::boundary_xi(j, bf)).abs();
                if g.label != PhaseLabel::Entangled || margin < 0.1 {
                    continue;
                }
                let c = closed(j, bf, xi, 0.01);
                assert!((c - 1.0 / xi).abs() <= 1e-3, "J={j} B={bf} xi={xi}: {c}");
            }
        }
    }
}

#[test]
fn threshold_separates_entangled_region() {
    for sign in [CouplingSign::Ferromagnetic, CouplingSign::Antiferromagnetic] {
        for xi in linspace(1.0, 2.0, 21) {
            let r = threshold_temperature(sign, xi).unwrap();
            let Some(tc) = r.temperature else {
                assert!(sign == CouplingSign::Ferromagnetic && xi == 1.0);
                continue;
            };
            assert!(r.residual.abs() <= 1e-12, "{sign} xi={xi} residual {}", r.residual);
            for bf in [0.0, 0.5, 1.5] {
                let j = sign.coupling();
                assert!(closed(j, bf, xi, tc * (1.0 - 1e-4)) > 0.0);
                assert_eq!(closed(j, bf, xi, tc * (1.0 + 1e-4)), 0.0);
            }
        }
    }
}

#[test]
fn antiferro_threshold_rises_with_inhomogeneity() {
    let mut prev = 0.0;
    for xi in linspace(1.0, 3.0, 21) {
        let tc = threshold_temperature(CouplingSign::Antiferromagnetic, xi)
            .unwrap()
            .temperature
            .unwrap();
        assert!(tc >= prev);
        prev = tc;
    }
}

proptest! {
    #[test]
    fn concurrence_is_even_in_both_fields(
        j in prop::sample::select(vec![-1.0, 1.0]),
        bf in 0.0f64..3.0,
        bi in 0.0f64..2.0,
        t in 0.05f64..5.0,
    ) {
        let c = |bf: f64, bi: f64| {
            concurrence_closed_form(&ThermalPoint::new(PairParams::new(j, bf, bi).unwrap(), t).unwrap())
                .unwrap()
                .value()
        };
        prop_assert_eq!(c(bf, bi), c(-bf, bi));
        prop_assert_eq!(c(bf, bi), c(bf, -bi));
    }

    #[test]
    fn concurrence_does_not_grow_with_field(
        j in prop::sample::select(vec![-1.0, 1.0]),
        b1 in 0.0f64..3.0,
        db in 0.0f64..2.0,
        xi in 1.0f64..2.0,
        t in 0.05f64..5.0,
    ) {
        prop_assert!(closed(j, b1, xi, t) >= closed(j, b1 + db, xi, t));
    }

    #[test]
    fn entanglement_sign_is_field_independent(
        j in prop::sample::select(vec![-1.0, 1.0]),
        b1 in 0.0f64..3.0,
        b2 in 0.0f64..3.0,
        xi in 1.0f64..2.0,
        t in 0.05f64..5.0,
    ) {
        let (p1, p2) = (point(j, b1, xi, t), point(j, b2, xi, t));
        prop_assert_eq!(is_entangled(&p1), is_entangled(&p2));
        // Away from the threshold itself the witness agrees with C > 0.
        let c = concurrence_closed_form(&p1).unwrap().value();
        if c > 1e-12 || c == 0.0 && closed(j, b1, xi, t * 0.999_999) == 0.0 {
            prop_assert_eq!(is_entangled(&p1), c > 0.0);
        }
    }

    #[test]
    fn gibbs_xstate_is_a_valid_state(
        j in prop::sample::select(vec![-1.0, 1.0]),
        bf in 0.0f64..3.0,
        bi in -2.0f64..2.0,
        t in 0.01f64..20.0,
    ) {
        let p = PairParams::new(j, bf, bi).unwrap();
        if let Ok(pt) = ThermalPoint::new(p, t) {
            let x = gibbs_xstate(&pt).unwrap();
            prop_assert!(x.validate().is_ok());
            prop_assert!(x.z.abs() <= x.w + 1e-12);
        }
    }
}
