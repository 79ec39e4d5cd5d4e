use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use superalg::algebra::{Element, GeneratorTable, Word};
use superalg::expr::parse_element;
use superalg::poly::Poly;
use superalg::presentations::{self, Presentation};
use superalg::scalar::Scalar;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0usize..3, 0usize..3, -4i64..=4), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (i, j, c)| {
            acc.add(&Poly::monomial(BigInt::from(c), i, j))
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly().prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| Scalar::from_polys(n, d))
}

/// Integer points where `s` is regular, used as an evaluation oracle.
fn points() -> Vec<(BigInt, BigInt)> {
    [(2, 3), (-1, 5), (7, -2), (3, 11)]
        .iter()
        .map(|&(a, b)| (BigInt::from(a), BigInt::from(b)))
        .collect()
}

fn agree(lhs: &Scalar, rhs: &Scalar, parts: &[&Scalar], f: impl Fn(&[Scalar]) -> Scalar) -> bool {
    if lhs != rhs {
        return false;
    }
    points().iter().all(|(p, q)| {
        let vals: Option<Vec<Scalar>> = parts.iter().map(|s| s.eval(p, q)).collect();
        match (vals, lhs.eval(p, q)) {
            (Some(v), Some(l)) => l == f(&v),
            _ => true,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(agree(&(&a + &b), &(&b + &a), &[&a, &b], |v| &v[0] + &v[1]));
        prop_assert!(agree(&(&a * &b), &(&b * &a), &[&a, &b], |v| &v[0] * &v[1]));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn scalar_display_parses_back(a in scalar()) {
        let table = GeneratorTable::from_spec(&[("x", 0, false)]);
        let e = parse_element(&a.to_string(), &table).unwrap();
        prop_assert_eq!(e, Element::scalar(&table, a));
    }
}

fn derham() -> Arc<Presentation> {
    presentations::build("derham_h").unwrap()
}

fn weyl() -> Arc<Presentation> {
    presentations::build("weyl_h").unwrap()
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-5i64..=5).prop_map(Scalar::from_int),
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Scalar::ratio(n, d)),
        Just(Scalar::p()),
        Just(Scalar::q().inv().unwrap()),
    ]
}

fn element(table: Arc<GeneratorTable>, max_len: usize) -> impl Strategy<Value = Element> {
    let n = table.len() as u16;
    prop::collection::vec(
        (small_scalar(), prop::collection::vec(0..n, 0..=max_len)),
        0..4,
    )
    .prop_map(move |terms| {
        let mut e = Element::zero(&table);
        for (c, w) in terms {
            e.add_term(Word::from_ids(&w), c);
        }
        e
    })
}

fn word(table: Arc<GeneratorTable>, max_len: usize) -> impl Strategy<Value = Word> {
    let n = table.len() as u16;
    prop::collection::vec(0..n, 0..=max_len).prop_map(|w| Word::from_ids(&w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn free_ring_laws(
        a in element(derham().table().clone(), 3),
        b in element(derham().table().clone(), 3),
        c in element(derham().table().clone(), 3),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&Element::one(a.table()) * &a, a.clone());
    }

    #[test]
    fn normalize_is_idempotent(a in element(derham().table().clone(), 4)) {
        let p = derham();
        let n = p.normalize(&a).unwrap();
        prop_assert_eq!(p.normalize(&n).unwrap(), n.clone());
        for w in n.terms().keys() {
            prop_assert!(p.rules.is_irreducible(w));
        }
    }

    #[test]
    fn normalize_respects_operations(
        a in element(weyl().table().clone(), 3),
        b in element(weyl().table().clone(), 3),
    ) {
        let p = weyl();
        let n = |e: &Element| p.normalize(e).unwrap();
        prop_assert_eq!(n(&(&a + &b)), &n(&a) + &n(&b));
        prop_assert_eq!(n(&(&a * &b)), n(&(&n(&a) * &n(&b))));
    }

    #[test]
    fn relations_vanish_in_context(
        u in word(derham().table().clone(), 2),
        v in word(derham().table().clone(), 2),
        k in 0usize..26,
    ) {
        let p = derham();
        let rules = p.rules.defining_rules();
        let rule = &rules[k % rules.len()];
        let t = p.table();
        let e = &(&Element::word(t, u) * &rule.relation()) * &Element::word(t, v);
        prop_assert!(p.normalize(&e).unwrap().is_zero());
    }

    #[test]
    fn normal_forms_print_and_parse(a in element(weyl().table().clone(), 4)) {
        let p = weyl();
        let n = p.normalize(&a).unwrap();
        let back = p.parse(&n.to_string()).unwrap();
        prop_assert_eq!(p.normalize(&back).unwrap(), n);
        prop_assert_eq!(p.parse(&a.to_string()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn derham_print_parse_roundtrip(a in element(derham().table().clone(), 4)) {
        let p = derham();
        let n = p.normalize(&a).unwrap();
        prop_assert_eq!(p.normalize(&p.parse(&n.to_string()).unwrap()).unwrap(), n);
    }
}
