use superalg::algebra::{Element, Morphism};
use superalg::presentations;
use superalg::rewrite::RuleSet;
use superalg::supermatrix::*;

fn r() -> GradedOperator {
    r_matrix(&parameter_table()).unwrap()
}

/// The single sign flip `-h -> h` in row 2, column 0.
fn mutant() -> GradedOperator {
    let r = r();
    let flipped = -r.entry(2, 0);
    r.with_entry(2, 0, flipped).unwrap()
}

#[test]
fn ybe_all_entries_vanish() {
    let report = check_ybe(&r()).unwrap();
    assert!(report.passed, "{:?}", report.witnesses);
    // Entries of a three-leg operator on a 3-dimensional space.
    assert_eq!(report.checked, 27 * 27);
}

#[test]
fn ybe_rejects_mutant() {
    let report = check_ybe(&mutant()).unwrap();
    assert!(!report.passed);
    assert!(report.failed > 0);
}

#[test]
fn ybe_survives_specializations() {
    let table = parameter_table();
    for zero in ["h", "hp"] {
        let m = Morphism::by_name(&table, &table).with(zero, Element::zero(&table));
        let special = r().map(|e| m.apply(e)).unwrap();
        assert!(check_ybe(&special).unwrap().passed, "{zero} = 0");
    }
}

#[test]
fn rhat_is_an_involution() {
    let rules = RuleSet::core(&parameter_table());
    let rh = r_hat(&r(), &rules).unwrap();
    let sq = rh.compose(&rh, &rules).unwrap();
    let id = GradedOperator::identity(2, &parameter_table());
    for d in sq.difference(&id).unwrap() {
        assert!(d.is_zero());
    }
}

#[test]
fn rtt_pinned_variant() {
    let bialg = presentations::build("matrix_bialgebra").unwrap();
    let plain = check_rtt(&r(), &bialg, SignVariant::Plain).unwrap();
    assert!(plain.passed, "{:?}", plain.witnesses);
    assert!(plain.checked >= 81);
    assert!(!check_rtt(&r(), &bialg, SignVariant::Dressed).unwrap().passed);
    assert_eq!(PINNED_RTT_VARIANT, SignVariant::Plain);
}

#[test]
fn rtt_rejects_mutant() {
    let bialg = presentations::build("matrix_bialgebra").unwrap();
    assert!(!check_rtt(&mutant(), &bialg, PINNED_RTT_VARIANT).unwrap().passed);
}

#[test]
fn rhat_presents_superspace_and_calculus() {
    let space = presentations::build("superspace_h").unwrap();
    let report = check_rhat_superspace(&r(), &space).unwrap();
    assert!(report.passed, "{:?}", report.witnesses);
    assert_eq!(report.checked, 9);
    let derham = presentations::build("derham_h").unwrap();
    let report = check_rhat_calculus(&r(), &derham).unwrap();
    assert!(report.passed, "{:?}", report.witnesses);
}

#[test]
fn coaction_preserves_relations() {
    for (target, relations) in [("superspace_h", 5), ("exterior_hp", 4), ("derham_h", 18)] {
        let report = check_coaction(target).unwrap();
        assert!(report.passed, "{target}: {:?}", report.witnesses);
        assert_eq!(report.checked, relations, "{target}");
    }
}

#[test]
fn non_homogeneous_entry_rejected() {
    let table = parameter_table();
    let bad = r().with_entry(1, 1, Element::gen(&table, "h"));
    assert!(bad.is_err());
}
