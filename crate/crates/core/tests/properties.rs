use std::f64::consts::{FRAC_PI_4, PI};

use clonelab::capacity::q_upper_bound;
use clonelab::eavesdrop::{cloner_fidelity, eave_fidelity, local_fidelity_3, EaveInteraction};
use clonelab::format::g12;
use clonelab::qmath::{
    fidelity_pure, partial_trace, trace_distance, BlochVector, ComplexMatrix, DensityOperator, StateVector, C64,
};
use clonelab::statedep::{apply, input_states, local_fidelity_1, Input, TwoStateEnsemble};
use clonelab::teleport::{corrected_branches, kraus_channel, BellOutcome, KrausGroupLabel};
use clonelab::universal::{build_optimal_isometry, clone, ClonerIsometry, UniversalClonerConfig};
use proptest::prelude::*;

fn pure() -> impl Strategy<Value = StateVector> {
    (0.0..PI, -PI..PI).prop_map(|(t, p)| StateVector::from_angles(t, p))
}

/// Mixed qubit states from Bloch vectors inside the unit ball.
fn mixed() -> impl Strategy<Value = DensityOperator> {
    (0.0..PI, -PI..PI, 0.0..=1.0f64).prop_map(|(t, p, r)| {
        let s = BlochVector { x: r * t.sin() * p.cos(), y: r * t.sin() * p.sin(), z: r * t.cos() };
        s.to_density()
    })
}

fn bh() -> ClonerIsometry {
    build_optimal_isometry(&UniversalClonerConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partial_trace_undoes_tensor(rho in mixed(), sigma in mixed()) {
        let joint = rho.tensor(&sigma).unwrap();
        let back = partial_trace(&joint, &[0], &[2, 2]).unwrap();
        prop_assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-12);
        let other = partial_trace(&joint, &[1], &[2, 2]).unwrap();
        prop_assert!(other.matrix().max_abs_diff(sigma.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn bloch_density_round_trip(rho in mixed()) {
        let again = rho.bloch().unwrap().to_density();
        prop_assert!(again.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-14);
    }

    #[test]
    fn fidelity_is_trace_of_product(rho in mixed(), psi in pure()) {
        let direct = rho.matrix().try_mul(psi.projector().matrix()).unwrap().trace().re;
        prop_assert!((fidelity_pure(&rho, &psi).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn density_constructor_rejects_bad_input(a in -1.0..1.0f64, b in 0.01..1.0f64, t in 0.0..0.9f64) {
        let nonherm = ComplexMatrix::from_rows([[C64::new(0.5, 0.0), C64::new(a, b)], [C64::new(a, b), C64::new(0.5, 0.0)]]);
        prop_assert!(DensityOperator::new(nonherm).is_err());
        prop_assert!(DensityOperator::new(ComplexMatrix::diag(&[t, 0.05])).is_err());
    }

    #[test]
    fn universal_clones_are_symmetric_isotropic(psi in pure()) {
        let out = clone(&bh(), &psi).unwrap();
        prop_assert!(trace_distance(&out.rho1, &out.rho2).unwrap() < 1e-12);
        let s_in = psi.projector().bloch().unwrap();
        let s_out = out.rho1.bloch().unwrap();
        let c = s_out.cross(&s_in);
        prop_assert!(c.iter().map(|v| v * v).sum::<f64>().sqrt() < 1e-10);
        prop_assert!((s_out.dot(&s_in) - 2.0 / 3.0).abs() < 1e-12);
        prop_assert!((fidelity_pure(&out.rho1, &psi).unwrap() - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn universal_columns_orthogonal_for_any_phase_gauge(da in -PI..PI, dt in -PI..PI, t in 0.0..PI, p in -PI..PI) {
        let anc = StateVector::from_angles(t, p);
        let perp = StateVector::from_angles(PI - t, p + PI);
        let cfg = UniversalClonerConfig::new(da, dt, anc, perp).unwrap();
        let iso = build_optimal_isometry(&cfg).unwrap();
        prop_assert!(iso.column_overlap().norm() < 1e-14);
    }

    #[test]
    fn teleport_outcome_bookkeeping(psi in pure()) {
        let branches = corrected_branches(&psi).unwrap();
        let by = |o: BellOutcome| branches.iter().find(|b| b.outcome == o).unwrap();
        let same = |x: BellOutcome, y: BellOutcome| by(x).bob_charlie.max_abs_diff(&by(y).bob_charlie).unwrap();
        prop_assert!(same(BellOutcome::PhiPlus, BellOutcome::PhiMinus) < 1e-12);
        prop_assert!(same(BellOutcome::PsiPlus, BellOutcome::PsiMinus) < 1e-12);

        let ch = kraus_channel();
        let s = psi.projector().bloch().unwrap();
        let mut total = 0.0;
        for label in [KrausGroupLabel::Phi, KrausGroupLabel::Psi] {
            let born: f64 = branches.iter().filter(|b| b.outcome.group() == label).map(|b| b.probability).sum();
            let bloch = ch.outcome_probability_bloch(label, &s).unwrap();
            prop_assert!((born - bloch).abs() < 1e-12);
            total += born;
        }
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn statedep_formula_matches_simulation(theta in 0.0..=FRAC_PI_4) {
        let e = TwoStateEnsemble::new(theta).unwrap();
        let (a, b) = input_states(&e);
        let fa = fidelity_pure(&apply(&e, Input::A).unwrap().rho_clone, &a).unwrap();
        let fb = fidelity_pure(&apply(&e, Input::B).unwrap().rho_clone, &b).unwrap();
        prop_assert!((fa - local_fidelity_1(e.overlap()).unwrap()).abs() < 1e-10);
        prop_assert!((fa - fb).abs() < 1e-12);
    }

    #[test]
    fn cloner_slice_is_restriction_and_bounded(theta in 0.0..=FRAC_PI_4, phi in -PI..PI) {
        let e = TwoStateEnsemble::new(theta).unwrap();
        let s = e.overlap();
        let full = eave_fidelity(&EaveInteraction::new(phi, phi, e));
        prop_assert!((full - cloner_fidelity(phi, s)).abs() < 1e-12);
        prop_assert!(cloner_fidelity(phi, s) <= local_fidelity_3(s).unwrap() + 1e-10);
    }

    #[test]
    fn capacity_monotone_and_conditional_tighter(x in 0.0..=1.0f64, y in 0.0..=1.0f64) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let a = q_upper_bound(lo, true).unwrap();
        let b = q_upper_bound(hi, true).unwrap();
        prop_assert!(a.bound <= b.bound);
        prop_assert!(b.conditional_linear_bound.unwrap() <= b.bound);
        prop_assert_eq!(b.bound == 0.0, hi <= 2.0 / 3.0);
    }

    #[test]
    fn g12_keeps_twelve_digits(x in prop::num::f64::NORMAL) {
        let back: f64 = g12(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs());
    }
}

#[test]
fn povm_elements_sum_to_identity() {
    let ch = kraus_channel();
    let sum = &ch.povm(KrausGroupLabel::Phi).unwrap() + &ch.povm(KrausGroupLabel::Psi).unwrap();
    assert!(sum.max_abs_diff(&ComplexMatrix::identity(2)).unwrap() < 1e-15);
}
