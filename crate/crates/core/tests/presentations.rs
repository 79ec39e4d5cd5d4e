use std::path::PathBuf;

use superalg::error::Error;
use superalg::presentations::{self, enumerate_basis, parse_rule, BUILTIN};
use superalg::rewrite::{RuleSet, DEFAULT_STEP_LIMIT};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

/// Monomials `x^a θ₁^b θ₂^c` of total degree `n` in the classical superspace.
fn classical_dimension(n: usize) -> usize {
    let mut count = 0;
    for b in 0..=1 {
        for c in 0..=1 {
            if b + c <= n {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn superspace_is_flat() {
    let p = presentations::build("superspace_h").unwrap();
    let counts: Vec<usize> = (0..=5).map(|d| enumerate_basis(&p, d).len()).collect();
    let classical: Vec<usize> = (0..=5).map(classical_dimension).collect();
    assert_eq!(counts, classical);
    assert_eq!(counts, vec![1, 3, 4, 4, 4, 4]);
}

#[test]
fn every_builtin_is_confluent() {
    for id in BUILTIN {
        let p = presentations::build(id).unwrap();
        let report = presentations::confluence(&p, 4).unwrap();
        let failures: Vec<String> = report.failures.iter().map(|f| f.describe(&p.rules)).collect();
        assert!(report.passed(), "{id}: {failures:#?}");
    }
}

fn mutant(id: &str, lhs: &str, rhs: &str) -> RuleSet {
    let p = presentations::build(id).unwrap();
    let w = p.parse(lhs).unwrap().terms().keys().next().unwrap().clone();
    let index = p
        .rules
        .defining_rules()
        .iter()
        .position(|r| *r.lhs() == w)
        .expect("rule to replace");
    let flipped = parse_rule(p.table(), lhs, rhs, "mutant").unwrap();
    p.rules.with_rule_replaced(index, flipped)
}

#[test]
fn sign_mutant_is_not_confluent() {
    // Commuting instead of anticommuting the odd coordinates clashes with
    // the h-term of x*th2 on the overlap x*th1*th2.
    let m = mutant("superspace_h", "th1*th2", "th2*th1");
    let report = m.check_confluence(3, DEFAULT_STEP_LIMIT).unwrap();
    assert!(!report.passed());
    let words: Vec<String> = report
        .failures
        .iter()
        .map(|f| f.word.display(m.table()).to_string())
        .collect();
    assert!(words.contains(&"x*th1*th2".to_string()), "{words:?}");
}

#[test]
fn uncorrected_weyl_relation_is_not_confluent() {
    let m = mutant(
        "weyl_h",
        "pth2*th2",
        "1 - th2*pth2 - h*x*pth2 + hp*th2*px + h*hp*(x*px + th2*pth2)",
    );
    assert!(!m.check_confluence(3, DEFAULT_STEP_LIMIT).unwrap().passed());
}

#[test]
fn core_alone_handles_parameters() {
    let p = presentations::build("superspace_h").unwrap();
    let core = RuleSet::core(p.table());
    let e = p.parse("hp*h*x + h*h + hp*x*hp").unwrap();
    assert_eq!(core.reduce(&e).unwrap(), p.parse("-h*hp*x").unwrap());
}

#[test]
fn file_matches_builtin() {
    let file = presentations::load_file(&data("superspace_h.pres")).unwrap();
    let builtin = presentations::build("superspace_h").unwrap();
    for expr in ["x*th2", "th2*th2*x", "x^3*th2*th1", "th1*x*th2*x"] {
        let a = file.normalize(&file.parse(expr).unwrap()).unwrap();
        let b = builtin.normalize(&builtin.parse(expr).unwrap()).unwrap();
        assert_eq!(a.to_string(), b.to_string(), "{expr}");
    }
    assert_eq!(file.checks.len(), 1);
    assert!(file.matrix.is_some());
}

#[test]
fn resolve_accepts_ids_and_paths() {
    assert!(presentations::resolve("weyl_q").is_ok());
    assert!(presentations::resolve(data("superspace_h.pres").to_str().unwrap()).is_ok());
    assert!(matches!(
        presentations::resolve("no_such_algebra"),
        Err(Error::UnknownPresentation(_)) | Err(Error::Io(_))
    ));
}

#[test]
fn step_limit_reports_non_termination() {
    let text = "[generators]\na 0\nb 0\n[order]\na b\n[relations]\nb*a = a*b\na*b = b*a\n";
    let p = presentations::parse_presentation("loop", text).unwrap();
    let e = p.parse("b*a").unwrap();
    match p.rules.normalize(&e, 50) {
        Err(Error::NonTermination { steps, recent }) => {
            assert_eq!(steps, 50);
            assert!(!recent.is_empty());
        }
        other => panic!("expected non-termination, got {other:?}"),
    }
}
