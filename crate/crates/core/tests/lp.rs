use affprox::lp::{solve_lp, verify_certificate, LinearProgram, LpOutcome, Relation, Sense};
use affprox::scalar::{int, ratio, Scalar};
use affprox::Error;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn min_x_subject_to_x_at_least_three() {
    let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1]));
    lp.constrain(ints(&[1]), Relation::Ge, int(3));
    let outcome = solve_lp(&lp).unwrap();
    match &outcome {
        LpOutcome::Optimal { x, value, dual } => {
            assert_eq!(x, &ints(&[3]));
            assert_eq!(value, &int(3));
            assert_eq!(dual, &ints(&[1]));
        }
        other => panic!("expected optimal, got {other:?}"),
    }
    assert!(verify_certificate(&lp, &outcome));

    // Same program with the constraint expressed as a variable bound.
    let mut bounded = LinearProgram::new(Sense::Minimize, ints(&[1]));
    bounded.bound(0, Some(int(3)), None);
    let outcome = solve_lp(&bounded).unwrap();
    assert_eq!(
        outcome,
        LpOutcome::Optimal {
            x: ints(&[3]),
            value: int(3),
            dual: vec![]
        }
    );
    assert!(verify_certificate(&bounded, &outcome));
}

#[test]
fn contradictory_pair_is_infeasible() {
    let mut lp = LinearProgram::new(Sense::Minimize, ints(&[0]));
    lp.constrain(ints(&[1]), Relation::Le, int(0));
    lp.constrain(ints(&[1]), Relation::Ge, int(1));
    let outcome = solve_lp(&lp).unwrap();
    let LpOutcome::Infeasible { farkas } = &outcome else {
        panic!("expected infeasible, got {outcome:?}");
    };
    // The certificate is a positive multiple of "(x ≥ 1) − (x ≤ 0)".
    assert!(farkas[1].is_positive());
    assert_eq!(farkas[0], -farkas[1].clone());
    assert!(verify_certificate(&lp, &outcome));
}

#[test]
fn box_maximum() {
    let mut lp = LinearProgram::new(Sense::Maximize, ints(&[1, 1]));
    lp.bound(0, Some(int(0)), Some(int(1)));
    lp.bound(1, Some(int(0)), Some(int(1)));
    let outcome = solve_lp(&lp).unwrap();
    let LpOutcome::Optimal { x, value, .. } = &outcome else {
        panic!("expected optimal");
    };
    assert_eq!(value, &int(2));
    assert_eq!(x, &ints(&[1, 1]));
    assert!(verify_certificate(&lp, &outcome));
}

#[test]
fn perturbed_optimum_fails_verification() {
    let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1]));
    lp.constrain(ints(&[1]), Relation::Ge, int(3));
    let LpOutcome::Optimal { x, value, dual } = solve_lp(&lp).unwrap() else {
        unreachable!()
    };
    for delta in [ratio(1, 1000), ratio(-1, 1000)] {
        let forged = LpOutcome::Optimal {
            x: vec![&x[0] + &delta],
            value: value.clone(),
            dual: dual.clone(),
        };
        assert!(!verify_certificate(&lp, &forged));
    }
    // A consistent value but a gap in the dual.
    let gap = LpOutcome::Optimal {
        x: ints(&[4]),
        value: int(4),
        dual: dual.clone(),
    };
    assert!(!verify_certificate(&lp, &gap));
}

#[test]
fn unbounded_with_ray() {
    let mut lp = LinearProgram::new(Sense::Maximize, ints(&[1, 2]));
    lp.nonnegative(0..2);
    lp.constrain(ints(&[1, -1]), Relation::Le, int(4));
    let outcome = solve_lp(&lp).unwrap();
    assert!(matches!(outcome, LpOutcome::Unbounded { .. }));
    assert!(verify_certificate(&lp, &outcome));

    // Free variable, no constraints.
    let lp = LinearProgram::new(Sense::Minimize, ints(&[-1]));
    let outcome = solve_lp(&lp).unwrap();
    assert!(matches!(outcome, LpOutcome::Unbounded { .. }));
    assert!(verify_certificate(&lp, &outcome));
}

#[test]
fn mislabelled_outcomes_are_rejected() {
    let mut lp = LinearProgram::new(Sense::Minimize, ints(&[1]));
    lp.constrain(ints(&[1]), Relation::Ge, int(3));
    assert!(!verify_certificate(
        &lp,
        &LpOutcome::Infeasible { farkas: ints(&[1]) }
    ));
    assert!(!verify_certificate(
        &lp,
        &LpOutcome::Unbounded {
            point: ints(&[3]),
            ray: ints(&[-1])
        }
    ));
    // Wrong-length certificates.
    assert!(!verify_certificate(
        &lp,
        &LpOutcome::Infeasible { farkas: vec![] }
    ));
    assert!(!verify_certificate(
        &lp,
        &LpOutcome::Optimal {
            x: ints(&[3, 0]),
            value: int(3),
            dual: ints(&[1])
        }
    ));
}

#[test]
fn malformed_programs() {
    let lp = LinearProgram::new(Sense::Minimize, vec![]);
    assert!(matches!(solve_lp(&lp), Err(Error::MalformedProgram(_))));

    let mut ragged = LinearProgram::new(Sense::Minimize, ints(&[1, 1]));
    ragged.constrain(ints(&[1]), Relation::Le, int(1));
    assert!(matches!(solve_lp(&ragged), Err(Error::MalformedProgram(_))));
    assert!(!verify_certificate(
        &ragged,
        &LpOutcome::Infeasible { farkas: ints(&[0]) }
    ));

    let mut inverted = LinearProgram::new(Sense::Minimize, ints(&[1]));
    inverted.bound(0, Some(int(2)), Some(int(1)));
    assert!(matches!(
        solve_lp(&inverted),
        Err(Error::MalformedProgram(_))
    ));
}

#[test]
fn degenerate_program_terminates() {
    // A classic cycling example for the largest-coefficient rule
    // (Beale); Bland's rule must terminate.
    let mut lp = LinearProgram::new(
        Sense::Minimize,
        vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6)],
    );
    lp.nonnegative(0..4);
    lp.constrain(
        vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)],
        Relation::Le,
        int(0),
    );
    lp.constrain(
        vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)],
        Relation::Le,
        int(0),
    );
    lp.constrain(ints(&[0, 0, 1, 0]), Relation::Le, int(1));
    let outcome = solve_lp(&lp).unwrap();
    let LpOutcome::Optimal { value, .. } = &outcome else {
        panic!("expected optimal");
    };
    assert_eq!(value, &ratio(-1, 20));
    assert!(verify_certificate(&lp, &outcome));
}

#[test]
fn redundant_equalities() {
    let mut lp = LinearProgram::new(Sense::Maximize, ints(&[1, 1, 1]));
    lp.nonnegative(0..3);
    lp.constrain(ints(&[1, 1, 1]), Relation::Eq, int(1));
    lp.constrain(ints(&[2, 2, 2]), Relation::Eq, int(2));
    lp.constrain(ints(&[1, 0, 0]), Relation::Eq, ratio(1, 3));
    let outcome = solve_lp(&lp).unwrap();
    let LpOutcome::Optimal { value, .. } = &outcome else {
        panic!("expected optimal");
    };
    assert_eq!(value, &int(1));
    assert!(verify_certificate(&lp, &outcome));
}

/// Brute-force reference for two-variable programs with finite boxes: the
/// optimum of a nonempty bounded polygon is attained at the intersection of
/// two of its boundary lines.
fn vertex_enumeration(lp: &LinearProgram) -> Option<Scalar> {
    assert_eq!(lp.num_vars(), 2);
    let mut lines: Vec<(Scalar, Scalar, Scalar)> = lp
        .constraints
        .iter()
        .map(|c| (c.coeffs[0].clone(), c.coeffs[1].clone(), c.rhs.clone()))
        .collect();
    for j in 0..2 {
        let unit = |k: usize| if k == j { int(1) } else { int(0) };
        for b in [&lp.lower[j], &lp.upper[j]] {
            lines.push((unit(0), unit(1), b.clone().expect("finite box")));
        }
    }
    let feasible = |x: &Scalar, y: &Scalar| {
        let rows = lp.constraints.iter().all(|c| {
            let lhs = &c.coeffs[0] * x + &c.coeffs[1] * y;
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        });
        rows && [x, y].iter().enumerate().all(|(j, v)| {
            **v >= *lp.lower[j].as_ref().unwrap() && **v <= *lp.upper[j].as_ref().unwrap()
        })
    };
    let mut best: Option<Scalar> = None;
    for (i, (a1, b1, c1)) in lines.iter().enumerate() {
        for (a2, b2, c2) in &lines[i + 1..] {
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (c1 * b2 - c2 * b1) / &det;
            let y = (a1 * c2 - a2 * c1) / &det;
            if !feasible(&x, &y) {
                continue;
            }
            let value = &lp.objective[0] * &x + &lp.objective[1] * &y;
            let better = match (&best, lp.sense) {
                (None, _) => true,
                (Some(b), Sense::Minimize) => value < *b,
                (Some(b), Sense::Maximize) => value > *b,
            };
            if better {
                best = Some(value);
            }
        }
    }
    best
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::Le), Just(Relation::Eq), Just(Relation::Ge)]
}

fn sense() -> impl Strategy<Value = Sense> {
    prop_oneof![Just(Sense::Minimize), Just(Sense::Maximize)]
}

fn boxed_two_var_program() -> impl Strategy<Value = LinearProgram> {
    (
        sense(),
        prop::collection::vec(-4i64..=4, 2),
        prop::collection::vec(((-4i64..=4, -4i64..=4), relation(), -6i64..=6), 0..5),
        prop::collection::vec((-3i64..=0, 0i64..=3), 2),
    )
        .prop_map(|(sense, obj, rows, bounds)| {
            let mut lp = LinearProgram::new(sense, ints(&obj));
            for ((a, b), rel, rhs) in rows {
                lp.constrain(ints(&[a, b]), rel, int(rhs));
            }
            for (j, (lo, hi)) in bounds.into_iter().enumerate() {
                lp.bound(j, Some(int(lo)), Some(int(hi)));
            }
            lp
        })
}

fn general_program() -> impl Strategy<Value = LinearProgram> {
    (1usize..=4).prop_flat_map(|n| {
        (
            sense(),
            prop::collection::vec(-3i64..=3, n),
            prop::collection::vec(
                (prop::collection::vec(-3i64..=3, n), relation(), -4i64..=4),
                0..5,
            ),
            prop::collection::vec((prop::option::of(-2i64..=0), prop::option::of(0i64..=2)), n),
        )
            .prop_map(|(sense, obj, rows, bounds)| {
                let mut lp = LinearProgram::new(sense, ints(&obj));
                for (a, rel, rhs) in rows {
                    lp.constrain(ints(&a), rel, int(rhs));
                }
                for (j, (lo, hi)) in bounds.into_iter().enumerate() {
                    lp.bound(j, lo.map(int), hi.map(int));
                }
                lp
            })
    })
}

proptest! {
    #[test]
    fn agrees_with_vertex_enumeration(lp in boxed_two_var_program()) {
        let outcome = solve_lp(&lp).unwrap();
        prop_assert!(verify_certificate(&lp, &outcome));
        match (vertex_enumeration(&lp), &outcome) {
            (Some(best), LpOutcome::Optimal { value, .. }) => prop_assert_eq!(&best, value),
            (None, LpOutcome::Infeasible { .. }) => {}
            (expected, got) => prop_assert!(false, "oracle {:?} vs solver {:?}", expected, got),
        }
    }

    #[test]
    fn every_outcome_carries_a_valid_certificate(lp in general_program()) {
        let outcome = solve_lp(&lp).unwrap();
        prop_assert!(verify_certificate(&lp, &outcome), "{:?}", outcome);
        // Determinism.
        prop_assert_eq!(solve_lp(&lp).unwrap(), outcome);
    }
}
