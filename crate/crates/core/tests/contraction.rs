use superalg::algebra::{Element, Word};
use superalg::contraction::*;
use superalg::error::Error;
use superalg::presentations::Presentation;
use superalg::scalar::Scalar;

fn word(p: &Presentation, text: &str) -> Word {
    p.parse(text).unwrap().terms().keys().next().unwrap().clone()
}

fn rhs(p: &Presentation, lhs: &str) -> Element {
    p.rule_for(&word(p, lhs)).unwrap().rhs().clone()
}

fn q_inv() -> Scalar {
    Scalar::q().inv().unwrap()
}

#[test]
fn x_dx_coefficients() {
    let derived = derive("derham_q").unwrap();
    let r = rhs(&derived, "x*dx");
    assert_eq!(r.coeff(&word(&derived, "dx*x")), Scalar::p());
    assert_eq!(r.coeff(&word(&derived, "h*hp*dx*x")), q_inv());
}

#[test]
fn px_x_coefficients() {
    let derived = derive("weyl_q").unwrap();
    let r = rhs(&derived, "px*x");
    assert_eq!(r.coeff(&word(&derived, "x*px")), Scalar::p());
    assert_eq!(r.coeff(&word(&derived, "h*hp*x*px")), q_inv());
}

#[test]
fn superspace_contracts() {
    let derived = derive("superspace_q").unwrap();
    let limit = take_limit(&rhs(&derived, "x*th1")).unwrap();
    assert_eq!(limit, derived.parse("th1*x").unwrap());
    assert_eq!(rhs(&derived, "x*th2"), derived.parse("q*th2*x + h*x^2").unwrap());
}

#[test]
fn transformed_relations_keep_pivots() {
    let bc = BasisChange::for_source("derham_q").unwrap();
    let rels = transform_relations("derham_q", &bc).unwrap();
    assert_eq!(rels.len(), 5 + 4 + 9);
    for t in &rels {
        assert!(!t.relation.coeff(&t.pivot).is_zero(), "{}", t.original);
    }
}

#[test]
fn every_target_passes() {
    for target in TARGETS {
        let report = contraction_check(target).unwrap();
        assert!(report.passed, "{target}: {:?}", report.witnesses);
        assert!(report.checked > 0);
    }
}

#[test]
fn unprinted_relation_is_reported() {
    let report = contraction_check("cross-generic").unwrap();
    assert_eq!(report.checked, 8);
    assert_eq!(report.notes.len(), 1);
    assert!(report.notes[0].contains("th1*dx"));
}

#[test]
fn no_poles_after_reduction() {
    for src in ["superspace_q", "exterior_pq", "derham_q", "weyl_q"] {
        let derived = derive(src).unwrap();
        for r in derived.rules.defining_rules() {
            take_limit(r.rhs()).unwrap_or_else(|e| panic!("{src}: {}: {e}", r.display()));
        }
    }
}

#[test]
fn unreduced_coefficients_have_poles() {
    let bc = BasisChange::for_source("superspace_q").unwrap();
    let rels = transform_relations("superspace_q", &bc).unwrap();
    let poles = rels.iter().filter(|t| take_limit(&t.relation).is_err()).count();
    assert!(poles > 0);
    let e = derive("superspace_q").unwrap().parse("1/(q - 1)*x").unwrap();
    assert!(matches!(take_limit(&e), Err(Error::Pole { term }) if term.contains('x')));
}

#[test]
fn basis_change_invariants() {
    for src in ["superspace_q", "exterior_pq", "derham_q", "weyl_q"] {
        let report = BasisChange::for_source(src).unwrap().invariants_check(src).unwrap();
        assert!(report.passed, "{src}: {:?}", report.witnesses);
    }
}

#[test]
fn differential_keeps_its_form() {
    let report = operator_identity_check().unwrap();
    assert!(report.passed, "{:?}", report.witnesses);
    let report = duality_transport_check(50, 8, 3).unwrap();
    assert!(report.passed, "{:?}", report.witnesses);
    assert_eq!(report.checked, 51);
}
