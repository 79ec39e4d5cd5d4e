//! Contraction of the (p,q)-deformed calculus to the h-deformed one.
//!
//! The q-side generators are rewritten through the singular basis change
//! `X = x + h'/(pq-1) θ₂`, `Θ₂ = θ₂ + h/(q-1) x`. The transformed relations
//! are solved for their leading words, reduced using the nilpotency of the
//! parameters, and only then evaluated at `p = q = 1`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Generator, GeneratorTable, Morphism, Parity, Word};
use crate::calculus;
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::poly::Poly;
use crate::presentations::{self, Presentation};
use crate::report::CheckReport;
use crate::rewrite::{RewriteRule, RuleSet};
use crate::scalar::Scalar;

const HT: &str = "h/(q - 1)";
const HPT: &str = "hp/(p*q - 1)";
const HHPT: &str = "h*hp/((q - 1)*(p*q - 1))";

/// Generator images of the basis change, as expressions in the target names.
#[derive(Clone, Debug)]
pub struct BasisChange {
    /// q-side generator to h-side expression.
    pub forward: Vec<(String, String)>,
    /// h-side generator to q-side expression.
    pub inverse: Vec<(String, String)>,
}

fn pairs(items: &[(&str, String)]) -> Vec<(String, String)> {
    items.iter().map(|(a, b)| (a.to_string(), b.clone())).collect()
}

fn coordinate_forward() -> Vec<(&'static str, String)> {
    vec![
        ("X", format!("x + {HPT}*th2")),
        ("Th1", "th1".into()),
        ("Th2", format!("th2 + {HT}*x")),
    ]
}

fn coordinate_inverse() -> Vec<(&'static str, String)> {
    vec![
        ("x", format!("X - {HPT}*Th2 - {HHPT}*X")),
        ("th1", "Th1".into()),
        ("th2", format!("Th2 - {HT}*X + {HHPT}*Th2")),
    ]
}

/// One-form images for odd `(d)X` and even `(d)Θ₂`; `d(h u) = -h du`.
fn one_form_forward(x: &str, t1: &str, t2: &str) -> Vec<(String, String)> {
    let (lx, l1, l2) = (x.to_lowercase(), t1.to_lowercase(), t2.to_lowercase());
    vec![
        (x.into(), format!("{lx} - {HPT}*{l2}")),
        (t1.into(), l1),
        (t2.into(), format!("{l2} - {HT}*{lx}")),
    ]
}

fn one_form_inverse(x: &str, t1: &str, t2: &str) -> Vec<(String, String)> {
    let (lx, l1, l2) = (x.to_lowercase(), t1.to_lowercase(), t2.to_lowercase());
    vec![
        (lx, format!("(1 - {HHPT})*{x} + {HPT}*{t2}")),
        (l1, t1.into()),
        (l2, format!("(1 + {HHPT})*{t2} + {HT}*{x}")),
    ]
}

fn derivative_forward() -> Vec<(&'static str, String)> {
    vec![
        ("pX", format!("(1 - {HHPT})*px - {HT}*pth2")),
        ("pTh1", "pth1".into()),
        ("pTh2", format!("(1 + {HHPT})*pth2 + {HPT}*px")),
    ]
}

impl BasisChange {
    /// The basis change for the generators of a q-side presentation.
    pub fn for_source(source: &str) -> Result<Self> {
        let mut forward = Vec::new();
        let mut inverse = Vec::new();
        let coords = |f: &mut Vec<_>, i: &mut Vec<_>| {
            f.extend(pairs(&coordinate_forward()));
            i.extend(pairs(&coordinate_inverse()));
        };
        match source {
            "superspace_q" => coords(&mut forward, &mut inverse),
            "exterior_pq" => {
                forward.extend(one_form_forward("Phi", "Y1", "Y2"));
                inverse.extend(one_form_inverse("Phi", "Y1", "Y2"));
            }
            "derham_q" => {
                coords(&mut forward, &mut inverse);
                forward.extend(one_form_forward("dX", "dTh1", "dTh2"));
                inverse.extend(one_form_inverse("dX", "dTh1", "dTh2"));
            }
            "weyl_q" => {
                coords(&mut forward, &mut inverse);
                forward.extend(pairs(&derivative_forward()));
            }
            _ => {
                return Err(Error::Domain(format!(
                    "no basis change is defined for `{source}`"
                )))
            }
        }
        Ok(BasisChange { forward, inverse })
    }

    fn morphism(
        images: &[(String, String)],
        source: &Arc<GeneratorTable>,
        target: &Arc<GeneratorTable>,
    ) -> Result<Morphism> {
        let mut m = Morphism::new(source, target);
        for g in source.parameters() {
            let name = &source.get(g).name;
            m.set(name, Element::gen(target, name))?;
        }
        for (g, img) in images {
            if source.lookup(g).is_some() {
                m.set(g, parse_element(img, target)?)?;
            }
        }
        Ok(m)
    }

    /// q-side generators to h-side elements.
    pub fn forward(
        &self,
        source: &Arc<GeneratorTable>,
        target: &Arc<GeneratorTable>,
    ) -> Result<Morphism> {
        Self::morphism(&self.forward, source, target)
    }

    /// h-side generators to q-side elements; `target` must carry `h`, `hp`.
    pub fn inverse(
        &self,
        source: &Arc<GeneratorTable>,
        target: &Arc<GeneratorTable>,
    ) -> Result<Morphism> {
        Self::morphism(&self.inverse, source, target)
    }

    /// Forward and inverse images compose to the identity up to nilpotency,
    /// and every coefficient has an allowed denominator.
    pub fn invariants_check(&self, source: &str) -> Result<CheckReport> {
        let q = presentations::build(source)?;
        let qx = with_parameters(q.table());
        let hx = h_table(q.table());
        let fwd = self.forward(&qx, &hx)?;
        let inv = self.inverse(&hx, &qx)?;
        let (hcore, qcore) = (RuleSet::core(&hx), RuleSet::core(&qx));
        let mut report = CheckReport::new(format!("basis change ({source})"));
        for (g, _) in &self.inverse {
            let e = Element::gen(&hx, g);
            let back = hcore.reduce(&fwd.apply(&inv.apply(&e)?)?)?;
            report.record(back == e, format!("forward(inverse({g}))"), &back);
        }
        for (g, img) in &self.forward {
            let e = Element::gen(&qx, g);
            if !self.inverse.is_empty() && !g.starts_with('p') {
                let back = qcore.reduce(&inv.apply(&fwd.apply(&e)?)?)?;
                report.record(back == e, format!("inverse(forward({g}))"), &back);
            }
            let parsed = parse_element(img, &hx)?;
            let ok = parsed.terms().values().all(|c| allowed_denominator(c.denominator()));
            report.record(ok, format!("denominators of {g}"), img);
        }
        if source == "weyl_q" {
            report.absorb(pairing_check(self, &qx, &hx)?);
        }
        Ok(report)
    }
}

fn allowed_denominator(d: &Poly) -> bool {
    let q1 = Poly::q().sub(&Poly::one());
    let pq1 = Poly::p().mul(&Poly::q()).sub(&Poly::one());
    [Poly::one(), q1.clone(), pq1.clone(), q1.mul(&pq1)]
        .iter()
        .any(|a| a == d)
}

/// The transformed derivatives are dual to the transformed coordinates:
/// `∂_A(X_B) = δ_AB` with the free graded Leibniz rule.
fn pairing_check(
    bc: &BasisChange,
    qx: &Arc<GeneratorTable>,
    hx: &Arc<GeneratorTable>,
) -> Result<CheckReport> {
    let fwd = bc.forward(qx, hx)?;
    let core = RuleSet::core(hx);
    let mut report = CheckReport::new("derivative pairing");
    let coords = ["X", "Th1", "Th2"];
    for a in coords {
        let op = fwd.apply(&Element::gen(qx, &format!("p{a}")))?;
        for b in coords {
            let f = fwd.apply(&Element::gen(qx, b))?;
            let got = core.reduce(&free_linear_action(&op, &f)?)?;
            let want = if a == b { Element::one(hx) } else { Element::zero(hx) };
            report.record(got == want, format!("d/d{a} ({b})"), &got);
        }
    }
    Ok(report)
}

/// `Σ c P ∂_g` applied to a linear form `Σ c' P' x` with `∂_g(x) = δ`.
fn free_linear_action(op: &Element, f: &Element) -> Result<Element> {
    let table = op.table();
    let split = |w: &Word| -> (Word, u16) {
        let (last, prefix) = w.as_slice().split_last().expect("nonempty word");
        (Word::from_ids(prefix), *last)
    };
    let mut out = Element::zero(table);
    for (ow, oc) in op.terms() {
        let (op_prefix, d) = split(ow);
        let target = table.get(d).name.trim_start_matches('p').to_string();
        for (fw, fc) in f.terms() {
            let (f_prefix, x) = split(fw);
            if table.get(x).name != target {
                continue;
            }
            let odd = table.parity(d).is_odd() && f_prefix.parity(table).is_odd();
            let sign = if odd { -Scalar::one() } else { Scalar::one() };
            out.add_term(op_prefix.concat(&f_prefix), sign * oc.clone() * fc.clone());
        }
    }
    Ok(out)
}

fn parameters() -> Vec<Generator> {
    ["h", "hp"]
        .map(|name| Generator {
            name: name.into(),
            parity: Parity::Odd,
            parameter: true,
        })
        .to_vec()
}

fn with_parameters(table: &Arc<GeneratorTable>) -> Arc<GeneratorTable> {
    let mut gens = parameters();
    gens.extend(table.generators().iter().filter(|g| !g.parameter).cloned());
    GeneratorTable::new(gens).expect("distinct generator names")
}

/// The h-side table matching a q-side one, with the same generator order.
fn h_table(table: &Arc<GeneratorTable>) -> Arc<GeneratorTable> {
    let mut gens = parameters();
    gens.extend(
        table
            .generators()
            .iter()
            .filter(|g| !g.parameter)
            .map(|g| Generator {
                name: g.name.to_lowercase(),
                ..g.clone()
            }),
    );
    GeneratorTable::new(gens).expect("distinct generator names")
}

/// The h-side presentation whose generators receive the forward images.
fn h_target(source: &str) -> Result<Arc<Presentation>> {
    presentations::build(match source {
        "superspace_q" => "superspace_h",
        "exterior_pq" => "exterior_hp",
        "derham_q" => "derham_h",
        "weyl_q" => "weyl_h",
        other => {
            return Err(Error::Domain(format!("`{other}` is not a q-deformed presentation")))
        }
    })
}

/// One relation of the q-side presentation after the basis change.
#[derive(Clone, Debug)]
pub struct TransformedRelation {
    pub source: String,
    /// The q-side relation, `lhs = rhs`.
    pub original: String,
    /// Leading word: the lower-cased left-hand side.
    pub pivot: Word,
    /// `image(lhs) - image(rhs)`, reduced by the parameter core only.
    pub relation: Element,
}

/// Substitute the basis change into every relation of `src`.
pub fn transform_relations(src: &str, bc: &BasisChange) -> Result<Vec<TransformedRelation>> {
    let q = presentations::build(src)?;
    let h = h_target(src)?;
    let fwd = bc.forward(q.table(), h.table())?;
    let core = RuleSet::core(h.table());
    let mut out = Vec::new();
    for rule in q.rules.defining_rules() {
        let relation = core.reduce(&fwd.apply(&rule.relation())?)?;
        let pivot = rule
            .lhs()
            .as_slice()
            .iter()
            .map(|&g| h.table().id(&q.table().get(g).name.to_lowercase()))
            .collect::<Result<Vec<_>>>()?;
        let pivot = Word::from_ids(&pivot);
        out.push(TransformedRelation {
            source: rule.source().to_string(),
            original: rule.display(),
            pivot,
            relation,
        });
    }
    Ok(out)
}

/// The transformed relations solved for their pivots, with every
/// right-hand side reduced modulo the others. Rules keep the source tag of
/// the q-side relation they come from.
pub fn derive(src: &str) -> Result<Presentation> {
    let bc = BasisChange::for_source(src)?;
    let h = h_target(src)?;
    let table = h.table();
    let transformed = transform_relations(src, &bc)?;
    let mut rules = Vec::new();
    for t in &transformed {
        let c0 = t.relation.coeff(&t.pivot);
        let c0_inv = c0.inv().ok_or_else(|| {
            Error::Domain(format!("pivot {} vanishes in {}", t.pivot.display(table), t.original))
        })?;
        let rhs = &Element::word(table, t.pivot.clone()) - &t.relation.scale(&c0_inv);
        rules.push(RewriteRule::elimination(t.pivot.clone(), rhs, t.source.clone()));
    }
    let system = RuleSet::new(table, rules.clone())?;
    let mut solved = Vec::new();
    for r in &rules {
        let rhs = system.reduce(r.rhs())?;
        solved.push(RewriteRule::new(r.lhs().clone(), rhs, r.source())?);
    }
    Presentation::from_rules(&format!("{src} (transformed)"), table, solved)
}

/// Evaluate every coefficient at `p = q = 1`.
pub fn take_limit(e: &Element) -> Result<Element> {
    let one = BigInt::one();
    let mut out = Element::zero(e.table());
    for (w, c) in e.terms() {
        let v = c.eval(&one, &one).ok_or_else(|| Error::Pole {
            term: Element::term(e.table(), w.clone(), c.clone()).to_string(),
        })?;
        out.add_term(w.clone(), v);
    }
    Ok(out)
}

/// Contraction targets. The `-generic` targets compare the transformed
/// relations before the limit.
pub const TARGETS: &[&str] = &[
    "superspace",
    "exterior",
    "differentials",
    "cross",
    "weyl",
    "cross-generic",
    "weyl-generic",
];

fn target_plan(target: &str) -> Result<(&'static str, &'static str, Plan)> {
    Ok(match target {
        "superspace" => ("superspace_q", "superspace", Plan::Limit),
        "exterior" => ("exterior_pq", "exterior", Plan::Limit),
        "differentials" => ("derham_q", "differentials", Plan::Limit),
        "cross" => ("derham_q", "cross", Plan::Limit),
        "weyl" => ("weyl_q", "weyl", Plan::Limit),
        "cross-generic" => ("derham_q", "cross", Plan::Golden("derham_h_derived")),
        "weyl-generic" => ("weyl_q", "weyl", Plan::Golden("weyl_h_derived")),
        other => {
            return Err(Error::Domain(format!(
                "unknown contraction target `{other}`; expected one of {}",
                TARGETS.join(", ")
            )))
        }
    })
}

enum Plan {
    /// Compare the `p, q -> 1` limit with the stored h-side rules of the
    /// same group.
    Limit,
    /// Compare the generic transformed rules with a stored presentation.
    Golden(&'static str),
}

/// Run one contraction comparison.
pub fn contraction_check(target: &str) -> Result<CheckReport> {
    let (src, group, plan) = target_plan(target)?;
    let derived = derive(src)?;
    let mut report = CheckReport::new(format!("contraction {target}"));
    match plan {
        Plan::Golden(stored) => {
            let golden = presentations::build(stored)?;
            let core = RuleSet::core(derived.table());
            for rule in derived.rules_from(group) {
                let label = rule.display();
                match golden.rule_for(rule.lhs()) {
                    Some(g) => {
                        let g_rhs = g.rhs().embed(derived.table())?;
                        let diff = core.reduce(&(rule.rhs() - &g_rhs))?;
                        report.record(diff.is_zero(), label, &diff);
                    }
                    None => report.note(format!("not printed, derived: {label}")),
                }
            }
        }
        Plan::Limit => {
            let h = h_target(src)?;
            for rule in derived.rules_from(group) {
                let label = rule.display();
                let limit = match take_limit(rule.rhs()) {
                    Ok(l) => l,
                    Err(e @ Error::Pole { .. }) => {
                        report.fail(label, e);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                match h.rule_for(rule.lhs()).filter(|r| r.source() == group) {
                    Some(stored) => {
                        let diff = RuleSet::core(h.table()).reduce(&(&limit - stored.rhs()))?;
                        report.record(diff.is_zero(), label, &diff);
                    }
                    None => report.fail(label, "no stored rule with this left-hand side"),
                }
            }
        }
    }
    Ok(report)
}

/// `d f = Σ dX_A ∂_A f` computed on the q side, transported back through
/// the basis change and contracted, agrees with `d f` on the h side.
pub fn duality_transport_check(trials: usize, seed: u64, max_degree: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("duality transport");
    report.absorb(operator_identity_check()?);

    let derham_h = presentations::build("derham_h")?;
    let weyl_q = presentations::build("weyl_q")?;
    let derham_q = presentations::build("derham_q")?;
    let weyl_qx = with_parameters(weyl_q.table());
    let weyl_qx = Presentation::from_rules(
        "weyl_q",
        &weyl_qx,
        embed_rules(&weyl_q, &weyl_qx)?,
    )?;
    let derham_qx = with_parameters(derham_q.table());
    let to_q = BasisChange::for_source("superspace_q")?.inverse(derham_h.table(), weyl_qx.table())?;
    let to_h = BasisChange::for_source("derham_q")?.forward(&derham_qx, derham_h.table())?;
    let generic = derive("derham_q")?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = calculus::random_element(&derham_h, &mut rng, max_degree)?;
        let big_f = weyl_qx.normalize(&to_q.apply(&f)?)?;
        let mut expansion = Element::zero(&derham_qx);
        for (x, dx) in [("X", "dX"), ("Th1", "dTh1"), ("Th2", "dTh2")] {
            let d = Element::gen(weyl_qx.table(), &format!("p{x}"));
            let part = weyl_qx.normalize(&(&d * &big_f))?;
            let part = part.filter_terms(|w| {
                w.as_slice()
                    .iter()
                    .all(|&g| !weyl_qx.table().get(g).name.starts_with('p'))
            });
            expansion = &expansion + &(&Element::gen(&derham_qx, dx) * &part.embed(&derham_qx)?);
        }
        let transported = generic.normalize(&to_h.apply(&expansion)?)?;
        let label = format!("f = {f}");
        let limit = match take_limit(&transported) {
            Ok(l) => derham_h.normalize(&l)?,
            Err(e) => {
                report.fail(label, e);
                continue;
            }
        };
        let want = calculus::differentiate(&f)?;
        let diff = derham_h.normalize(&(&limit - &want))?;
        report.record(diff.is_zero(), label, &diff);
    }
    report.check = "duality transport".into();
    Ok(report)
}

fn embed_rules(p: &Presentation, table: &Arc<GeneratorTable>) -> Result<Vec<RewriteRule>> {
    p.rules.defining_rules().iter().map(|r| r.embed(table)).collect()
}

/// `Σ fwd(dX_A) fwd(∂_A) = Σ dx_a ∂_a` using only the parameter core.
pub fn operator_identity_check() -> Result<CheckReport> {
    let table = GeneratorTable::from_spec(&[
        ("h", 1, true),
        ("hp", 1, true),
        ("dth2", 0, false),
        ("dth1", 0, false),
        ("dx", 1, false),
        ("pth2", 1, false),
        ("pth1", 1, false),
        ("px", 0, false),
    ]);
    let core = RuleSet::core(&table);
    let image = |name: &str| -> Result<Element> {
        let all: Vec<(String, String)> = one_form_forward("dX", "dTh1", "dTh2")
            .into_iter()
            .chain(pairs(&derivative_forward()))
            .collect();
        let (_, img) = all.iter().find(|(g, _)| g == name).expect("known generator");
        parse_element(img, &table)
    };
    let mut lhs = Element::zero(&table);
    for (d, p) in [("dX", "pX"), ("dTh1", "pTh1"), ("dTh2", "pTh2")] {
        lhs = &lhs + &(&image(d)? * &image(p)?);
    }
    let rhs = parse_element("dx*px + dth1*pth1 + dth2*pth2", &table)?;
    let diff = core.reduce(&(&lhs - &rhs))?;
    let mut report = CheckReport::new("operator identity");
    report.record(diff.is_zero(), "sum of dX_A d/dX_A", &diff);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_of_constants_and_poles() {
        let p = presentations::build("derham_h").unwrap();
        let e = p.parse("(p + q^-1*h*hp)*dx*x").unwrap();
        assert_eq!(take_limit(&e).unwrap(), p.parse("(1 + h*hp)*dx*x").unwrap());
        assert_eq!(take_limit(&p.parse("5").unwrap()).unwrap(), p.parse("5").unwrap());
        let pole = p.parse("1/(q - 1)*x").unwrap();
        assert!(matches!(take_limit(&pole), Err(Error::Pole { .. })));
    }

    #[test]
    fn x_dx_coefficient() {
        let derived = derive("derham_q").unwrap();
        let pivot = derived.parse("x*dx").unwrap();
        let w = pivot.terms().keys().next().unwrap();
        let rhs = derived.rule_for(w).unwrap().rhs();
        let dxx = derived.parse("dx*x").unwrap();
        let dxx = dxx.terms().keys().next().unwrap();
        assert_eq!(rhs.coeff(dxx), Scalar::p());
    }

    #[test]
    fn superspace_limit_is_pole_free() {
        let derived = derive("superspace_q").unwrap();
        for r in derived.rules.defining_rules() {
            take_limit(r.rhs()).unwrap();
        }
        let w = derived.parse("x*th2").unwrap();
        let w = w.terms().keys().next().unwrap();
        let rhs = derived.rule_for(w).unwrap().rhs();
        assert_eq!(*rhs, derived.parse("q*th2*x + h*x^2").unwrap());
    }

    #[test]
    fn unknown_target() {
        assert!(matches!(contraction_check("nowhere"), Err(Error::Domain(_))));
    }
}
