use superalg::algebra::{Element, Morphism};
use superalg::calculus::*;
use superalg::presentations::{self, Presentation};
use superalg::scalar::Scalar;

/// Set both parameters to zero and renormalize.
fn classical(p: &Presentation, e: &Element) -> Element {
    let t = p.table();
    let m = Morphism::by_name(t, t)
        .with("h", Element::zero(t))
        .with("hp", Element::zero(t));
    p.normalize(&m.apply(e).unwrap()).unwrap()
}

/// Exponents `(c, b, a)` of a normal-ordered `th2^c th1^b x^a`.
fn exponents(p: &Presentation, e: &Element) -> (usize, usize, usize) {
    let t = p.table();
    let w = e.terms().keys().next().unwrap();
    let count = |n: &str| w.as_slice().iter().filter(|&&g| t.get(g).name == n).count();
    (count("th2"), count("th1"), count("x"))
}

fn monomial(p: &Presentation, c: usize, b: usize, a: usize, coeff: i64) -> Element {
    let mut parts = vec!["th2"; c];
    parts.extend(vec!["th1"; b]);
    parts.extend(vec!["x"; a]);
    let text = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
    p.parse(&text).unwrap().scale(&Scalar::from_int(coeff))
}

/// Classical graded derivatives acting from the left.
fn classical_partial(p: &Presentation, v: &str, (c, b, a): (usize, usize, usize)) -> Element {
    match v {
        "x" if a > 0 => monomial(p, c, b, a - 1, a as i64),
        "th1" if b == 1 => monomial(p, c, 0, a, if c == 1 { -1 } else { 1 }),
        "th2" if c == 1 => monomial(p, 0, b, a, 1),
        _ => Element::zero(p.table()),
    }
}

#[test]
fn partials_reduce_to_classical_derivatives() {
    let weyl = presentations::build("weyl_h").unwrap();
    for w in coordinate_basis(&weyl, 5).unwrap() {
        let f = Element::word(weyl.table(), w);
        let exps = exponents(&weyl, &f);
        for v in ["x", "th1", "th2"] {
            let got = classical(&weyl, &partial(v, &f).unwrap());
            assert_eq!(got, classical_partial(&weyl, v, exps), "d/d{v} {f}");
        }
    }
}

#[test]
fn differential_reduces_to_classical() {
    let derham = presentations::build("derham_h").unwrap();
    let weyl = presentations::build("weyl_h").unwrap();
    for w in coordinate_basis(&derham, 4).unwrap() {
        let f = Element::word(derham.table(), w);
        let exps = exponents(&derham, &f);
        let mut want = Element::zero(derham.table());
        for (v, dv, _) in COORDINATES {
            let part = classical_partial(&weyl, v, exps).embed(derham.table()).unwrap();
            want = &want + &(&Element::gen(derham.table(), dv) * &part);
        }
        let got = classical(&derham, &differentiate(&f).unwrap());
        assert_eq!(got, derham.normalize(&want).unwrap(), "d {f}");
    }
}

#[test]
fn calculus_identities_hold() {
    for report in [
        dsquare_check(6).unwrap(),
        leibniz_check(200, 11, 4).unwrap(),
        duality_check(5).unwrap(),
        derivative_algebra_check(5).unwrap(),
    ] {
        assert!(report.passed, "{}: {:?}", report.check, report.witnesses);
        assert!(report.checked > 0);
    }
}

#[test]
fn partial_of_coordinates_is_kronecker() {
    let report = delta_check().unwrap();
    assert!(report.passed);
    assert_eq!(report.checked, 9);
}

#[test]
fn star_structures() {
    for id in ["superspace_h", "derham_h", "weyl_h"] {
        let p = presentations::build(id).unwrap();
        let report = star_relation_check(&p, &InvolutionSpec::star(id).unwrap()).unwrap();
        assert!(report.passed, "{id}: {:?}", report.witnesses);
        // Every defining relation plus every generator.
        let expected = p.rules.defining_rules().len() + p.table().len();
        assert_eq!(report.checked, expected, "{id}");
    }
    assert!(InvolutionSpec::star("matrix_bialgebra").is_err());
}

#[test]
fn star_reverses_products() {
    let p = presentations::build("derham_h").unwrap();
    let spec = InvolutionSpec::star("derham_h").unwrap();
    let f = p.parse("th2*x").unwrap();
    let g = p.parse("dx").unwrap();
    let fg = star_apply(&(&f * &g), &p, &spec).unwrap();
    let gf = p
        .normalize(&(&star_apply(&g, &p, &spec).unwrap() * &star_apply(&f, &p, &spec).unwrap()))
        .unwrap();
    assert_eq!(fg, gf);
}

#[test]
fn leibniz_is_reproducible() {
    let a = leibniz_check(20, 3, 3).unwrap();
    let b = leibniz_check(20, 3, 3).unwrap();
    assert_eq!(a, b);
}

#[test]
fn operator_application() {
    let weyl = presentations::build("weyl_h").unwrap();
    let op = weyl.parse("x*px").unwrap();
    let f = weyl.parse("x^2").unwrap();
    // x * d/dx (x^2) = x * ((2 + h*hp) x + hp*th2)
    let want = weyl.normalize(&weyl.parse("(2 + h*hp)*x^2 + x*hp*th2").unwrap()).unwrap();
    assert_eq!(apply_operator(&op, &f).unwrap(), want);
}
