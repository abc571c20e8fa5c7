mod common;

use chazy_core::catalog::{build_equation, EquationId};
use chazy_core::classifier::{
    classify_all, enumerate_unit_fractions, kappa_invariants, relations_hold, solve_eigen_relations, Status,
};
use chazy_core::Rational;
use proptest::prelude::*;

const BOX: i64 = 60;

#[test]
fn case1_matches_brute_force() {
    let s = solve_eigen_relations().unwrap();
    let brute = common::brute_force_case1(BOX);
    let structured = common::structured_case1(&s, BOX);
    let missed: Vec<_> = brute.difference(&structured).collect();
    let extra: Vec<_> = structured.difference(&brute).collect();
    assert!(missed.is_empty(), "missed by enumeration: {missed:?}");
    assert!(extra.is_empty(), "not confirmed by brute force: {extra:?}");
}

#[test]
fn case2_matches_brute_force() {
    let s = solve_eigen_relations().unwrap();
    let brute = common::brute_force_case2(BOX);
    let structured: std::collections::BTreeSet<_> = s.case2.iter().map(|v| common::as_pairs(v)).collect();
    assert_eq!(brute, structured);
}

#[test]
fn every_emitted_solution_satisfies_the_relations() {
    let s = solve_eigen_relations().unwrap();
    for v in s.case1.iter().chain(&s.case1_sporadic) {
        assert!(relations_hold(v, 3));
    }
    for v in &s.case2 {
        assert!(relations_hold(v, 2));
    }
    for v in &s.case3 {
        assert!(relations_hold(v, 1));
    }
}

#[test]
fn accepted_outcomes_rescale_onto_the_catalog() {
    for o in classify_all().unwrap() {
        if let Status::Accepted { id, scale } = &o.status {
            let cat = build_equation(*id).unwrap();
            assert_eq!(o.coefficients.as_ref(), Some(&cat.coeffs));
            assert!(!scale.is_zero());
        }
    }
}

#[test]
fn rejected_outcomes_carry_failing_witnesses() {
    for o in classify_all().unwrap() {
        if let Status::Rejected { witnesses } = &o.status {
            assert!(!witnesses.is_empty());
            assert!(witnesses.iter().all(|w| !w.passes()));
        }
    }
}

#[test]
fn catalog_eigen_data_is_integral() {
    for id in EquationId::all() {
        let (_, td) = kappa_invariants(&build_equation(id).unwrap());
        assert!(!td.is_empty(), "{id}");
        for x in td {
            assert!(x.t.to_integer().is_some() && x.d.to_integer().is_some(), "{id}");
        }
    }
}

#[test]
fn classification_json_is_deterministic() {
    let a: Vec<String> = classify_all().unwrap().iter().map(|o| o.to_json().to_string()).collect();
    let b: Vec<String> = classify_all().unwrap().iter().map(|o| o.to_json().to_string()).collect();
    assert_eq!(a, b);
}

proptest! {
    #[test]
    fn unit_fraction_tuples_are_canonical_and_exact(n in 1i64..8, d in 1i64..13, slots in 2usize..4) {
        let target = Rational::new(n.into(), d.into());
        let sols = enumerate_unit_fractions(&target, slots, &[]).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for t in &sols.finite {
            let sum: Rational = t.iter().map(|&x| Rational::new(1.into(), x.into())).sum();
            prop_assert_eq!(&sum, &target);
            let mut c = t.clone();
            c.sort_by_key(|&x| (x.abs(), x));
            prop_assert_eq!(&c, t);
            prop_assert!(seen.insert(t.clone()));
        }
    }
}
