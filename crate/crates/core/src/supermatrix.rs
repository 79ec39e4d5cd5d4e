//! Even operators on tensor powers of the (1|2)-graded space.
//!
//! Basis vectors `e_1, e_2, e_3` have parities `(0, 1, 1)`. An operator on
//! `V^{⊗k}` is a `3^k x 3^k` matrix of algebra elements, rows and columns
//! indexed by multi-indices in lexicographic order (`11, 12, 13, 21, ...`).
//! Coefficients are written to the left of basis vectors; composition is the
//! plain matrix product with entries multiplied in written order.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Element, GeneratorTable, Parity};
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::presentations::{self, Presentation};
use crate::report::CheckReport;
use crate::rewrite::{RewriteRule, RuleSet};
use crate::scalar::Scalar;

/// Parities of the basis vectors.
pub const TAU: [u8; 3] = [0, 1, 1];

/// Rows of the deformed R-matrix, upper index pair `ij` by row.
pub const R_MATRIX: [[&str; 9]; 9] = [
    ["1 + h*hp", "0", "hp", "0", "0", "0", "-hp", "0", "0"],
    ["0", "1", "0", "0", "0", "0", "0", "0", "0"],
    ["-h", "0", "1", "0", "0", "0", "h*hp", "0", "-hp"],
    ["0", "0", "0", "1", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "1", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "1", "0", "0", "0"],
    ["h", "0", "h*hp", "0", "0", "0", "1", "0", "-hp"],
    ["0", "0", "0", "0", "0", "0", "0", "1", "0"],
    ["0", "0", "h", "0", "0", "0", "h", "0", "1 - h*hp"],
];

/// Generator names of the matrix `T = (t_ij)`.
pub const T_MATRIX: [[&str; 3]; 3] = [
    ["a", "alpha", "beta"],
    ["gamma", "b", "c"],
    ["delta", "d", "e"],
];

/// How the first tensor leg of `T` is signed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignVariant {
    /// `(T_1)^{ij}_{kl} = t_ik δ_jl`.
    Plain,
    /// Plain times `(-1)^{τ(j)(τ(i)+τ(k))}`.
    Dressed,
}

/// The variant under which the RTT relations reproduce the bialgebra.
pub const PINNED_RTT_VARIANT: SignVariant = SignVariant::Plain;

impl fmt::Display for SignVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignVariant::Plain => "plain",
            SignVariant::Dressed => "dressed",
        })
    }
}

impl FromStr for SignVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(SignVariant::Plain),
            "dressed" => Ok(SignVariant::Dressed),
            _ => Err(Error::Domain(format!(
                "unknown sign variant `{s}` (expected plain or dressed)"
            ))),
        }
    }
}

pub fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

fn digits(mut idx: usize, legs: usize) -> Vec<usize> {
    let mut out = vec![0; legs];
    for slot in (0..legs).rev() {
        out[slot] = idx % 3;
        idx /= 3;
    }
    out
}

fn index(ds: &[usize]) -> usize {
    ds.iter().fold(0, |acc, d| acc * 3 + d)
}

pub fn index_parity(ds: &[usize]) -> u8 {
    ds.iter().map(|&d| TAU[d]).sum::<u8>() % 2
}

/// An even operator on `V^{⊗legs}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedOperator {
    legs: usize,
    table: Arc<GeneratorTable>,
    entries: Vec<Element>,
}

impl GradedOperator {
    /// Checks that every entry is homogeneous of parity
    /// `τ(row) + τ(col)`.
    pub fn new(legs: usize, table: &Arc<GeneratorTable>, entries: Vec<Element>) -> Result<Self> {
        let dim = 3usize.pow(legs as u32);
        if entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "operator on {legs} legs needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        for (k, e) in entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let (row, col) = (k / dim, k % dim);
            let want = (index_parity(&digits(row, legs)) + index_parity(&digits(col, legs))) % 2;
            if e.parity() != Some(Parity::from_bit(want)) {
                return Err(Error::ParityInconsistent { row, col });
            }
        }
        Ok(GradedOperator {
            legs,
            table: table.clone(),
            entries,
        })
    }

    /// A 9x9 operator from rows of elements.
    pub fn from_rows(table: &Arc<GeneratorTable>, rows: Vec<Vec<Element>>) -> Result<Self> {
        if rows.len() != 9 || rows.iter().any(|r| r.len() != 9) {
            return Err(Error::Domain("a two-leg operator needs 9 rows of 9 entries".into()));
        }
        Self::new(2, table, rows.into_iter().flatten().collect())
    }

    /// A 9x9 operator from rows of expression strings.
    pub fn parse_rows(table: &Arc<GeneratorTable>, rows: &[[&str; 9]; 9]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_element(s, table)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::from_rows(table, rows)
    }

    pub fn identity(legs: usize, table: &Arc<GeneratorTable>) -> Self {
        let dim = 3usize.pow(legs as u32);
        let entries = (0..dim * dim)
            .map(|k| {
                if k / dim == k % dim {
                    Element::one(table)
                } else {
                    Element::zero(table)
                }
            })
            .collect();
        GradedOperator {
            legs,
            table: table.clone(),
            entries,
        }
    }

    /// The super permutation `P(e_k ⊗ e_l) = (-1)^{τ(k)τ(l)} e_l ⊗ e_k`.
    pub fn super_permutation(table: &Arc<GeneratorTable>) -> Self {
        Self::from_fn(2, table, |r, c| {
            if r[0] == c[1] && r[1] == c[0] {
                Element::scalar(table, sign(TAU[c[0]] * TAU[c[1]] == 1))
            } else {
                Element::zero(table)
            }
        })
    }

    pub fn from_fn(
        legs: usize,
        table: &Arc<GeneratorTable>,
        mut f: impl FnMut(&[usize], &[usize]) -> Element,
    ) -> Self {
        let dim = 3usize.pow(legs as u32);
        let mut entries = Vec::with_capacity(dim * dim);
        for row in 0..dim {
            let r = digits(row, legs);
            for col in 0..dim {
                entries.push(f(&r, &digits(col, legs)));
            }
        }
        GradedOperator {
            legs,
            table: table.clone(),
            entries,
        }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        3usize.pow(self.legs as u32)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn entry(&self, row: usize, col: usize) -> &Element {
        &self.entries[row * self.dim() + col]
    }

    /// Entry by multi-indices, e.g. `at(&[0, 0], &[0, 2])` for `X^{11}_{13}`.
    pub fn at(&self, upper: &[usize], lower: &[usize]) -> &Element {
        self.entry(index(upper), index(lower))
    }

    /// Entrywise map, e.g. to specialise parameters.
    pub fn map(&self, mut f: impl FnMut(&Element) -> Result<Element>) -> Result<Self> {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        let table = entries
            .first()
            .map(|e| e.table().clone())
            .unwrap_or_else(|| self.table.clone());
        Self::new(self.legs, &table, entries)
    }

    /// The same operator over another table.
    pub fn embed(&self, table: &Arc<GeneratorTable>) -> Result<Self> {
        self.map(|e| e.embed(table))
    }

    /// Matrix product, entries normalised by `rules`.
    pub fn compose(&self, other: &Self, rules: &RuleSet) -> Result<Self> {
        if self.legs != other.legs {
            return Err(Error::Domain("operators act on different tensor powers".into()));
        }
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut row = vec![Element::zero(&self.table); n];
            for m in 0..n {
                let a = &self.entries[i * n + m];
                if a.is_zero() {
                    continue;
                }
                for (j, acc) in row.iter_mut().enumerate() {
                    let b = &other.entries[m * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    for (w, c) in a.try_mul(b)?.into_terms() {
                        acc.add_term(w, c);
                    }
                }
            }
            for e in row {
                out.push(rules.reduce(&e)?);
            }
        }
        Ok(GradedOperator {
            legs: self.legs,
            table: self.table.clone(),
            entries: out,
        })
    }

    /// Entrywise difference.
    pub fn difference(&self, other: &Self) -> Result<Vec<Element>> {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(&-b))
            .collect()
    }

    /// The operator with entry `(row, col)` replaced.
    pub fn with_entry(&self, row: usize, col: usize, e: Element) -> Result<Self> {
        let mut entries = self.entries.clone();
        let n = self.dim();
        entries[row * n + col] = e;
        Self::new(self.legs, &self.table, entries)
    }

    /// `R_12` on three legs: `R^{ab}_{de} δ_cf`.
    pub fn leg12(&self) -> Self {
        assert_eq!(self.legs, 2);
        Self::from_fn(3, &self.table, |r, c| {
            if r[2] != c[2] {
                return Element::zero(&self.table);
            }
            self.at(&r[..2], &c[..2]).clone()
        })
    }

    /// `R_23` on three legs: `δ_ad R^{bc}_{ef}`, with the sign of moving the
    /// entry past `e_a`.
    pub fn leg23(&self) -> Self {
        assert_eq!(self.legs, 2);
        Self::from_fn(3, &self.table, |r, c| {
            if r[0] != c[0] {
                return Element::zero(&self.table);
            }
            let odd = (index_parity(&r[1..]) + index_parity(&c[1..])) % 2 == 1;
            self.at(&r[1..], &c[1..]).scale(&sign(odd && TAU[r[0]] == 1))
        })
    }

    /// `R_13 = P_23 R_12 P_23`.
    pub fn leg13(&self, rules: &RuleSet) -> Result<Self> {
        let p23 = Self::super_permutation(&self.table).leg23();
        p23.compose(&self.leg12(), rules)?.compose(&p23, rules)
    }
}

/// The built-in R-matrix over `table` (which must contain `h` and `hp`).
pub fn r_matrix(table: &Arc<GeneratorTable>) -> Result<GradedOperator> {
    GradedOperator::parse_rows(table, &R_MATRIX)
}

/// A table with just the two odd parameters.
pub fn parameter_table() -> Arc<GeneratorTable> {
    GeneratorTable::from_spec(&[("h", 1, true), ("hp", 1, true)])
}

/// `R̂ = P R`.
pub fn r_hat(r: &GradedOperator, rules: &RuleSet) -> Result<GradedOperator> {
    GradedOperator::super_permutation(r.table()).compose(r, rules)
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` entry by entry.
pub fn check_ybe(r: &GradedOperator) -> Result<CheckReport> {
    let rules = RuleSet::core(r.table());
    let (r12, r23) = (r.leg12(), r.leg23());
    let r13 = r.leg13(&rules)?;
    let lhs = r12.compose(&r13, &rules)?.compose(&r23, &rules)?;
    let rhs = r23.compose(&r13, &rules)?.compose(&r12, &rules)?;
    let mut report = CheckReport::new("ybe");
    let n = lhs.dim();
    for (k, d) in lhs.difference(&rhs)?.into_iter().enumerate() {
        let d = rules.reduce(&d)?;
        let label = format!("({}, {})", k / n, k % n);
        report.record(d.is_zero(), label, &d);
    }
    Ok(report)
}

/// The matrix `T` over the bialgebra's table.
pub fn t_matrix(table: &Arc<GeneratorTable>) -> Result<[[Element; 3]; 3]> {
    let g = |n: &str| -> Result<Element> { Ok(Element::generator(table, table.id(n)?)) };
    let row = |r: [&str; 3]| -> Result<[Element; 3]> { Ok([g(r[0])?, g(r[1])?, g(r[2])?]) };
    Ok([row(T_MATRIX[0])?, row(T_MATRIX[1])?, row(T_MATRIX[2])?])
}

/// `T_1 = T ⊗ I` (leg 1) or `T_2 = P T_1 P` (leg 2).
pub fn tensor_leg(
    t: &[[Element; 3]; 3],
    leg: usize,
    variant: SignVariant,
    rules: &RuleSet,
) -> Result<GradedOperator> {
    let table = rules.table();
    let t1 = GradedOperator::from_fn(2, table, |r, c| {
        if r[1] != c[1] {
            return Element::zero(table);
        }
        let e = &t[r[0]][c[0]];
        match variant {
            SignVariant::Plain => e.clone(),
            SignVariant::Dressed => {
                e.scale(&sign(TAU[r[1]] * (TAU[r[0]] + TAU[c[0]]) % 2 == 1))
            }
        }
    });
    match leg {
        1 => Ok(t1),
        2 => {
            let p = GradedOperator::super_permutation(table);
            p.compose(&t1, rules)?.compose(&p, rules)
        }
        _ => Err(Error::Domain(format!("tensor leg must be 1 or 2, got {leg}"))),
    }
}

/// `R T_1 T_2 = T_2 T_1 R` modulo the bialgebra relations.
pub fn check_rtt(
    r: &GradedOperator,
    bialg: &Presentation,
    variant: SignVariant,
) -> Result<CheckReport> {
    let rules = &bialg.rules;
    let r = r.embed(bialg.table())?;
    let t = t_matrix(bialg.table())?;
    let t1 = tensor_leg(&t, 1, variant, rules)?;
    let t2 = tensor_leg(&t, 2, variant, rules)?;
    let lhs = r.compose(&t1, rules)?.compose(&t2, rules)?;
    let rhs = t2.compose(&t1, rules)?.compose(&r, rules)?;
    let mut report = CheckReport::new(format!("rtt ({variant})"));
    for (k, d) in lhs.difference(&rhs)?.into_iter().enumerate() {
        let d = rules.reduce(&d)?;
        report.record(d.is_zero(), format!("({}, {})", k / 9, k % 9), &d);
    }
    for check in &bialg.checks {
        let d = rules.reduce(&check.relation())?;
        report.record(d.is_zero(), format!("check {}", check.source), &d);
    }
    Ok(report)
}

fn gens(table: &Arc<GeneratorTable>, names: [&str; 3]) -> Result<[Element; 3]> {
    let g = |n: &str| -> Result<Element> { Ok(Element::generator(table, table.id(n)?)) };
    Ok([g(names[0])?, g(names[1])?, g(names[2])?])
}

/// `x_i x_j = Σ R̂^{ij}_{kl} x_k x_l` in the superspace.
pub fn check_rhat_superspace(r: &GradedOperator, space: &Presentation) -> Result<CheckReport> {
    let table = space.table();
    let rules = &space.rules;
    let rh = r_hat(&r.embed(table)?, rules)?;
    let x = gens(table, ["x", "th1", "th2"])?;
    let mut report = CheckReport::new("rhat (superspace)");
    for i in 0..3 {
        for j in 0..3 {
            let mut rel = &x[i] * &x[j];
            for k in 0..3 {
                for l in 0..3 {
                    let c = rh.at(&[i, j], &[k, l]);
                    rel = &rel - &(&(c * &x[k]) * &x[l]);
                }
            }
            let d = rules.reduce(&rel)?;
            report.record(d.is_zero(), format!("component {}{}", i + 1, j + 1), &d);
        }
    }
    Ok(report)
}

/// Rank over `Q(p, q)` of a list of elements at `h = hp = 0`.
pub fn classical_rank(elements: &[Element]) -> usize {
    let mut rows: Vec<std::collections::BTreeMap<crate::algebra::Word, Scalar>> = elements
        .iter()
        .map(|e| {
            let t = e.table();
            e.terms()
                .iter()
                .filter(|(w, _)| !w.as_slice().iter().any(|&g| t.is_parameter(g)))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect()
        })
        .collect();
    let mut rank = 0;
    while let Some(pos) = rows.iter().position(|r| !r.is_empty()) {
        let pivot = rows.swap_remove(pos);
        let (pw, pc) = pivot.iter().next().map(|(w, c)| (w.clone(), c.clone())).unwrap();
        for row in rows.iter_mut() {
            if let Some(c) = row.get(&pw).cloned() {
                let f = &c / &pc;
                for (w, v) in &pivot {
                    let nv = row.get(w).cloned().unwrap_or_default() - &f * v;
                    if nv.is_zero() {
                        row.remove(w);
                    } else {
                        row.insert(w.clone(), nv);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Regenerate the cross and two-form relations of the de Rham complex from
/// `R̂` and compare with the stored ones.
pub fn check_rhat_calculus(r: &GradedOperator, derham: &Presentation) -> Result<CheckReport> {
    let table = derham.table();
    let rules = &derham.rules;
    let rh = r_hat(&r.embed(table)?, rules)?;
    let x = gens(table, ["x", "th1", "th2"])?;
    let dx = gens(table, ["dx", "dth1", "dth2"])?;
    let entry_sign = |e: &Element| sign(e.parity() == Some(Parity::Odd));

    let mut cross = CheckReport::new("rhat (cross relations)");
    for i in 0..3 {
        for j in 0..3 {
            let mut rhs = Element::zero(table);
            for k in 0..3 {
                for l in 0..3 {
                    let c = rh.at(&[i, j], &[k, l]);
                    if c.is_zero() {
                        continue;
                    }
                    rhs = &rhs + &(&(&c.scale(&entry_sign(c)) * &dx[k]) * &x[l]);
                }
            }
            let rhs = RuleSet::core(table).reduce(&rhs.scale(&sign(TAU[i] == 1)))?;
            let lhs = &x[i] * &dx[j];
            let word = lhs.terms().keys().next().unwrap().clone();
            let label = format!("{}", lhs);
            match derham.rule_for(&word) {
                Some(rule) if *rule.rhs() == rhs => cross.pass(),
                Some(rule) => cross.fail(label, format!("regenerated {rhs}, stored {}", rule.rhs())),
                None => cross.fail(label, "no stored rule"),
            }
        }
    }

    let mut forms = CheckReport::new("rhat (two-form relations)");
    let mut regenerated = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let mut rel = (&dx[i] * &dx[j]).scale(&sign(TAU[i] == 1));
            for k in 0..3 {
                for l in 0..3 {
                    let c = rh.at(&[i, j], &[k, l]);
                    if c.is_zero() {
                        continue;
                    }
                    // τ(dx_k) = 1 - τ(x_k)
                    let s = sign(TAU[k] == 0);
                    rel = &rel - &(&(&c.scale(&s) * &dx[k]) * &dx[l]);
                }
            }
            let d = rules.reduce(&rel)?;
            forms.record(
                d.is_zero(),
                format!("component {}{}", i + 1, j + 1),
                &d,
            );
            regenerated.push(RuleSet::core(table).reduce(&rel)?);
        }
    }
    let stored: Vec<Element> = derham
        .rules_from("differentials")
        .iter()
        .map(|r| r.relation())
        .collect();
    let (rr, rs) = (classical_rank(&regenerated), classical_rank(&stored));
    forms.record(
        rr == rs && rs == stored.len(),
        "span",
        format!("regenerated rank {rr}, stored rank {rs}"),
    );
    forms.note(format!(
        "regenerated relations lie in the stored ideal and have classical rank {rr} = {rs}"
    ));

    cross.absorb(forms);
    cross.check = "rhat (calculus)".into();
    Ok(cross)
}

/// Vectors acted on by `T`. Differential vectors (flag `true`) transform as
/// `(id ⊗ d)` of the coordinate coaction, `δ_L(dx_i) = Σ_j (-1)^{τ(t_ij)} t_ij dx_j`.
fn comodule_vectors(target: &str) -> Result<Vec<([&'static str; 3], bool)>> {
    Ok(match target {
        "superspace_h" => vec![(["x", "th1", "th2"], false)],
        "exterior_hp" => vec![(["phi", "y1", "y2"], true)],
        "derham_h" => vec![(["x", "th1", "th2"], false), (["dx", "dth1", "dth2"], true)],
        _ => {
            return Err(Error::Domain(format!(
                "coaction is defined for superspace_h, exterior_hp and derham_h, not `{target}`"
            )))
        }
    })
}

/// The bialgebra and a comodule side by side, with bialgebra generators
/// ordered first and graded commutation between the two factors.
pub fn coaction_presentation(target: &Presentation) -> Result<Presentation> {
    let bialg = presentations::build("matrix_bialgebra")?;
    let mut spec: Vec<(String, u8, bool)> = Vec::new();
    for g in bialg.table().generators() {
        spec.push((g.name.clone(), g.parity.bit(), g.parameter));
    }
    for g in target.table().generators() {
        if !g.parameter {
            spec.push((g.name.clone(), g.parity.bit(), false));
        }
    }
    let spec_ref: Vec<(&str, u8, bool)> =
        spec.iter().map(|(n, p, q)| (n.as_str(), *p, *q)).collect();
    let table = GeneratorTable::from_spec(&spec_ref);
    let mut rules = Vec::new();
    for r in bialg.rules.defining_rules() {
        rules.push(r.embed(&table)?);
    }
    for r in target.rules.defining_rules() {
        rules.push(r.embed(&table)?);
    }
    for xg in target.variables() {
        let xg = target.table().get(xg);
        let x = table.id(&xg.name)?;
        for tg in bialg.variables() {
            let tg = bialg.table().get(tg);
            let t = table.id(&tg.name)?;
            let odd = xg.parity.is_odd() && tg.parity.is_odd();
            let lhs = crate::algebra::Word::from_ids(&[x, t]);
            let rhs = Element::term(&table, crate::algebra::Word::from_ids(&[t, x]), sign(odd));
            rules.push(RewriteRule::new(lhs, rhs, "coaction")?);
        }
    }
    Presentation::from_rules(&format!("matrix_bialgebra+{}", target.name), &table, rules)
}

/// Apply `δ_L(x_i) = Σ_j t_ij x_j` to every defining relation of the target.
pub fn check_coaction(target: &str) -> Result<CheckReport> {
    let space = presentations::build(target)?;
    let vectors = comodule_vectors(target)?;
    let combined = coaction_presentation(&space)?;
    let table = combined.table();
    let t = t_matrix(table)?;
    let mut delta = crate::algebra::Morphism::by_name(space.table(), table);
    for (v, shifted) in &vectors {
        let x = gens(table, *v)?;
        for i in 0..3 {
            let mut img = Element::zero(table);
            for j in 0..3 {
                let s = sign(*shifted && (TAU[i] + TAU[j]) % 2 == 1);
                img = &img + &(&t[i][j] * &x[j]).scale(&s);
            }
            delta.set(v[i], img)?;
        }
    }
    let mut report = CheckReport::new(format!("coaction ({target})"));
    for rule in space.rules.defining_rules() {
        let img = delta.apply(&rule.relation())?;
        let d = combined.normalize(&img)?;
        report.record(d.is_zero(), rule.display(), &d);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> (Arc<GeneratorTable>, RuleSet) {
        let t = parameter_table();
        let rules = RuleSet::core(&t);
        (t, rules)
    }

    #[test]
    fn permutation_squares_to_identity() {
        let (t, rules) = params();
        let p = GradedOperator::super_permutation(&t);
        assert_eq!(p.compose(&p, &rules).unwrap(), GradedOperator::identity(2, &t));
    }

    #[test]
    fn r_times_identity() {
        let (t, rules) = params();
        let r = r_matrix(&t).unwrap();
        assert_eq!(r.compose(&GradedOperator::identity(2, &t), &rules).unwrap(), r);
    }

    #[test]
    fn rhat_corner_entry() {
        let (t, rules) = params();
        let rh = r_hat(&r_matrix(&t).unwrap(), &rules).unwrap();
        assert_eq!(rh.at(&[0, 0], &[0, 0]).to_string(), "1 + h*hp");
    }

    #[test]
    fn parity_violation_rejected() {
        let (t, _) = params();
        let mut entries = GradedOperator::identity(2, &t).entries;
        entries[1] = Element::gen(&t, "h") * Element::gen(&t, "hp");
        assert!(matches!(
            GradedOperator::new(2, &t, entries),
            Err(Error::ParityInconsistent { row: 0, col: 1 })
        ));
    }

    #[test]
    fn identity_satisfies_ybe() {
        let (t, _) = params();
        assert!(check_ybe(&GradedOperator::identity(2, &t)).unwrap().passed);
    }

    #[test]
    fn dressed_sign() {
        let p = presentations::build("matrix_bialgebra").unwrap();
        let t = t_matrix(p.table()).unwrap();
        let t1 = tensor_leg(&t, 1, SignVariant::Dressed, &p.rules).unwrap();
        assert_eq!(t1.at(&[0, 1], &[2, 1]).to_string(), "-beta");
        let plain = tensor_leg(&t, 1, SignVariant::Plain, &p.rules).unwrap();
        assert_eq!(plain.at(&[0, 1], &[0, 1]).to_string(), "a");
    }

    #[test]
    fn classical_rank_of_dependent_rows() {
        let tbl = GeneratorTable::from_spec(&[("h", 1, true), ("x", 0, false), ("y", 0, false)]);
        let e = |s: &str| parse_element(s, &tbl).unwrap();
        assert_eq!(classical_rank(&[e("x*y - y*x"), e("2*x*y - 2*y*x + h*x"), e("x*x")]), 2);
    }
}
