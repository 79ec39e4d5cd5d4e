//! Oriented word rewriting modulo a presentation, plus critical-pair checks.
//!
//! Reduction always rewrites the leftmost redex of a word, choosing the
//! earliest rule in list order at that position. The reduction of a word is
//! therefore a fixed function of the word, and the normal form of an element
//! is the linear extension of that function, independent of the order in
//! which terms are processed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{koszul, Element, GenId, GeneratorTable, Word};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_STEP_LIMIT: usize = 100_000;

static STEP_LIMIT: AtomicUsize = AtomicUsize::new(DEFAULT_STEP_LIMIT);

/// Step limit used by [`RuleSet::reduce`].
pub fn step_limit() -> usize {
    STEP_LIMIT.load(Ordering::Relaxed)
}

/// Change the process-wide step limit used by [`RuleSet::reduce`].
pub fn set_step_limit(steps: usize) {
    STEP_LIMIT.store(steps.max(1), Ordering::Relaxed);
}

/// Number of trailing steps kept in a non-termination error.
const RECENT_STEPS: usize = 32;

/// `lhs -> rhs`, oriented as written in the source relation.
#[derive(Clone, Debug)]
pub struct RewriteRule {
    lhs: Word,
    rhs: Element,
    source: String,
}

impl RewriteRule {
    /// Checks that `lhs` has length at least two, that both sides have the
    /// same parity and that `lhs` does not reappear inside `rhs`.
    pub fn new(lhs: Word, rhs: Element, source: impl Into<String>) -> Result<Self> {
        let table = rhs.table().clone();
        let rule = RewriteRule {
            lhs,
            rhs,
            source: source.into(),
        };
        let fail = |msg: &str| Error::Rule {
            lhs: rule.lhs.display(&table).to_string(),
            msg: msg.to_string(),
        };
        if rule.lhs.len() < 2 {
            return Err(fail("left-hand side must have length at least two"));
        }
        if let Some(p) = rule.rhs.parity() {
            if !rule.rhs.is_zero() && p != rule.lhs.parity(&table) {
                return Err(fail("left- and right-hand sides have different parity"));
            }
        } else {
            return Err(fail("right-hand side is not homogeneous"));
        }
        if rule.rhs.terms().keys().any(|w| w.contains(rule.lhs.as_slice())) {
            return Err(fail("left-hand side occurs inside the right-hand side"));
        }
        Ok(rule)
    }

    /// Like [`RewriteRule::new`] but allows `lhs` to reappear in `rhs`
    /// behind a nilpotent parameter prefix. Used when eliminating variables
    /// from transformed relations.
    pub(crate) fn elimination(lhs: Word, rhs: Element, source: impl Into<String>) -> Self {
        RewriteRule {
            lhs,
            rhs,
            source: source.into(),
        }
    }

    /// The same rule over another table, matching generators by name.
    pub fn embed(&self, table: &Arc<GeneratorTable>) -> Result<RewriteRule> {
        let lhs = Element::word(self.rhs.table(), self.lhs.clone()).embed(table)?;
        let word = lhs.terms().keys().next().expect("nonzero word").clone();
        Ok(RewriteRule {
            lhs: word,
            rhs: self.rhs.embed(table)?,
            source: self.source.clone(),
        })
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Element {
        &self.rhs
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// `lhs - rhs` as an element.
    pub fn relation(&self) -> Element {
        let table = self.rhs.table();
        &Element::word(table, self.lhs.clone()) - &self.rhs
    }

    pub fn display(&self) -> String {
        format!(
            "{} = {}",
            self.lhs.display(self.rhs.table()),
            self.rhs
        )
    }
}

/// One applied rewrite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: usize,
    pub position: usize,
    #[serde(skip)]
    pub word: Word,
}

/// Full record of a traced normalization.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub steps: Vec<(TraceStep, Element)>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-run the recorded steps from `input`; returns the final element.
    pub fn replay(&self, input: &Element, rules: &RuleSet) -> Element {
        let mut cur = input.clone();
        for (step, _) in &self.steps {
            let c = cur.coeff(&step.word);
            let rule = &rules.rules[step.rule];
            cur.add_term(step.word.clone(), -&c);
            for (t, tc) in rule.rhs.terms() {
                let w = step.word.splice(step.position, rule.lhs.len(), t.as_slice());
                cur.add_term(w, &c * tc);
            }
        }
        cur
    }
}

/// Oriented rules over one generator table, always including the
/// supercommutation core for the table's parameter generators.
#[derive(Clone, Debug)]
pub struct RuleSet {
    table: Arc<GeneratorTable>,
    rules: Vec<RewriteRule>,
    core_len: usize,
    /// For two-letter left-hand sides: first rule index for `(a, b)`.
    pairs: Vec<Option<u32>>,
    /// Rules with longer left-hand sides, keyed by first letter.
    long: Vec<Vec<u32>>,
}

impl RuleSet {
    /// Rule set with the parameter core followed by `rules`.
    pub fn new(table: &Arc<GeneratorTable>, rules: Vec<RewriteRule>) -> Result<Self> {
        for r in &rules {
            if !Arc::ptr_eq(r.rhs.table(), table) && **r.rhs.table() != **table {
                return Err(Error::TableMismatch);
            }
        }
        let mut all = parameter_core(table);
        let core_len = all.len();
        all.extend(rules);
        Ok(Self::index(table, all, core_len))
    }

    /// Only the parameter core.
    pub fn core(table: &Arc<GeneratorTable>) -> Self {
        Self::new(table, Vec::new()).expect("core rules")
    }

    fn index(table: &Arc<GeneratorTable>, rules: Vec<RewriteRule>, core_len: usize) -> Self {
        let n = table.len();
        let mut pairs = vec![None; n * n];
        let mut long = vec![Vec::new(); n];
        for (i, r) in rules.iter().enumerate() {
            let l = r.lhs.as_slice();
            if l.len() == 2 {
                let slot = &mut pairs[l[0] as usize * n + l[1] as usize];
                if slot.is_none() {
                    *slot = Some(i as u32);
                }
            } else {
                long[l[0] as usize].push(i as u32);
            }
        }
        RuleSet {
            table: table.clone(),
            rules,
            core_len,
            pairs,
            long,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Rules excluding the parameter core.
    pub fn defining_rules(&self) -> &[RewriteRule] {
        &self.rules[self.core_len..]
    }

    pub fn core_rules(&self) -> &[RewriteRule] {
        &self.rules[..self.core_len]
    }

    /// Copy with one defining rule replaced (used to build mutants).
    pub fn with_rule_replaced(&self, index: usize, rule: RewriteRule) -> Self {
        let mut rules = self.rules.clone();
        rules[self.core_len + index] = rule;
        Self::index(&self.table, rules, self.core_len)
    }

    /// Copy with extra rules appended.
    pub fn extended(&self, extra: Vec<RewriteRule>) -> Self {
        let mut rules = self.rules.clone();
        rules.extend(extra);
        Self::index(&self.table, rules, self.core_len)
    }

    /// Leftmost redex: `(position, rule index)`.
    pub fn first_redex(&self, w: &[GenId]) -> Option<(usize, usize)> {
        let n = self.table.len();
        for pos in 0..w.len() {
            let mut best: Option<u32> = None;
            if pos + 1 < w.len() {
                best = self.pairs[w[pos] as usize * n + w[pos + 1] as usize];
            }
            for &ri in &self.long[w[pos] as usize] {
                if best.is_some_and(|b| b < ri) {
                    break;
                }
                if w[pos..].starts_with(self.rules[ri as usize].lhs.as_slice()) {
                    best = Some(ri);
                    break;
                }
            }
            if let Some(b) = best {
                return Some((pos, b as usize));
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.first_redex(w.as_slice()).is_none()
    }

    fn rewrite_at(&self, w: &Word, pos: usize, rule: usize) -> Vec<(Word, &Scalar)> {
        let r = &self.rules[rule];
        r.rhs
            .terms()
            .iter()
            .map(|(t, c)| (w.splice(pos, r.lhs.len(), t.as_slice()), c))
            .collect()
    }

    fn check_table(&self, e: &Element) -> Result<()> {
        if Arc::ptr_eq(e.table(), &self.table) || **e.table() == *self.table {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    /// Normal form of `e`.
    pub fn normalize(&self, e: &Element, step_limit: usize) -> Result<Element> {
        self.run(e, step_limit, None)
    }

    /// Normal form with the process-wide [`step_limit`].
    pub fn reduce(&self, e: &Element) -> Result<Element> {
        self.normalize(e, step_limit())
    }

    /// Normal form together with the full sequence of rewrites.
    pub fn normalize_traced(
        &self,
        e: &Element,
        step_limit: usize,
    ) -> Result<(Element, ReductionTrace)> {
        let mut trace = ReductionTrace { steps: Vec::new() };
        let out = self.run(e, step_limit, Some(&mut trace))?;
        Ok((out, trace))
    }

    fn run(
        &self,
        e: &Element,
        step_limit: usize,
        mut trace: Option<&mut ReductionTrace>,
    ) -> Result<Element> {
        self.check_table(e)?;
        let mut pending: BTreeMap<Word, Scalar> = e.terms().clone();
        let mut result = Element::zero(&self.table);
        let mut steps = 0usize;
        let mut recent: VecDeque<TraceStep> = VecDeque::with_capacity(RECENT_STEPS);
        while let Some((w, c)) = pending.pop_last() {
            let Some((pos, rule)) = self.first_redex(w.as_slice()) else {
                result.add_term(w, c);
                continue;
            };
            steps += 1;
            let step = TraceStep {
                rule,
                position: pos,
                word: w.clone(),
            };
            if steps > step_limit {
                recent.push_back(step);
                return Err(Error::NonTermination {
                    steps: step_limit,
                    recent: recent.into_iter().collect(),
                });
            }
            for (nw, nc) in self.rewrite_at(&w, pos, rule) {
                let v = &c * nc;
                match pending.entry(nw) {
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(v);
                    }
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        let sum = slot.get() + &v;
                        if sum.is_zero() {
                            slot.remove();
                        } else {
                            *slot.get_mut() = sum;
                        }
                    }
                }
            }
            if let Some(t) = trace.as_deref_mut() {
                let snapshot = Element::from_terms(
                    &self.table,
                    pending
                        .iter()
                        .map(|(w, c)| (w.clone(), c.clone()))
                        .chain(result.terms().iter().map(|(w, c)| (w.clone(), c.clone()))),
                );
                t.steps.push((step, snapshot));
            } else {
                if recent.len() == RECENT_STEPS {
                    recent.pop_front();
                }
                recent.push_back(step);
            }
        }
        Ok(result)
    }

    /// True when `e` lies in the ideal, i.e. normalizes to zero.
    pub fn is_zero_mod(&self, e: &Element, step_limit: usize) -> Result<bool> {
        Ok(self.normalize(e, step_limit)?.is_zero())
    }

    /// All overlap and inclusion ambiguities of length at most `max_len`
    /// whose two one-step reductions differ, with both sides normalized.
    pub fn critical_pairs(&self, max_len: usize, step_limit: usize) -> Result<Vec<CriticalPair>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            let u = ri.lhs.as_slice();
            for (j, rj) in self.rules.iter().enumerate() {
                let v = rj.lhs.as_slice();
                // Proper overlaps: a suffix of u equals a prefix of v.
                for k in 1..u.len().min(v.len()) {
                    if u[u.len() - k..] != v[..k] {
                        continue;
                    }
                    let total = u.len() + v.len() - k;
                    if total > max_len {
                        continue;
                    }
                    let mut ids = u.to_vec();
                    ids.extend_from_slice(&v[k..]);
                    let w = Word::from_ids(&ids);
                    let key = (w.clone(), (i, 0usize), (j, u.len() - k));
                    if seen.insert(key) {
                        if let Some(cp) = self.resolve(w, (i, 0), (j, u.len() - k), step_limit)? {
                            out.push(cp);
                        }
                    }
                }
                // Inclusions: v occurs inside u.
                if i != j && v.len() <= u.len() && u.len() <= max_len {
                    for s in 0..=(u.len() - v.len()) {
                        if u[s..s + v.len()] != *v {
                            continue;
                        }
                        let w = Word::from_ids(u);
                        let key = (w.clone(), (i, 0usize), (j, s));
                        if seen.insert(key) {
                            if let Some(cp) = self.resolve(w, (i, 0), (j, s), step_limit)? {
                                out.push(cp);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    fn resolve(
        &self,
        w: Word,
        a: (usize, usize),
        b: (usize, usize),
        step_limit: usize,
    ) -> Result<Option<CriticalPair>> {
        let one_step = |(rule, pos): (usize, usize)| {
            Element::from_terms(
                &self.table,
                self.rewrite_at(&w, pos, rule)
                    .into_iter()
                    .map(|(w, c)| (w, c.clone())),
            )
        };
        let ea = one_step(a);
        let eb = one_step(b);
        if ea == eb {
            return Ok(None);
        }
        let left = self.normalize(&ea, step_limit)?;
        let right = self.normalize(&eb, step_limit)?;
        Ok(Some(CriticalPair {
            word: w,
            first: a,
            second: b,
            left,
            right,
        }))
    }

    /// Local confluence up to overlap length `max_len`.
    pub fn check_confluence(&self, max_len: usize, step_limit: usize) -> Result<ConfluenceReport> {
        let pairs = self.critical_pairs(max_len, step_limit)?;
        let checked = pairs.len();
        let failures: Vec<CriticalPair> = pairs.into_iter().filter(|p| !p.resolves()).collect();
        Ok(ConfluenceReport {
            checked,
            failures,
            max_len,
        })
    }
}

/// An ambiguity `word` reducible by two (rule, position) redexes.
#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub left: Element,
    pub right: Element,
}

impl CriticalPair {
    pub fn resolves(&self) -> bool {
        self.left == self.right
    }

    pub fn describe(&self, rules: &RuleSet) -> String {
        format!(
            "{}: [{}] -> {} vs [{}] -> {}",
            self.word.display(rules.table()),
            rules.rules()[self.first.0].display(),
            self.left,
            rules.rules()[self.second.0].display(),
            self.right
        )
    }
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub failures: Vec<CriticalPair>,
    pub max_len: usize,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Nilpotency and supercommutation of the parameter generators. Parameters
/// are moved to the left of every other generator, and among themselves
/// into table order.
fn parameter_core(table: &Arc<GeneratorTable>) -> Vec<RewriteRule> {
    let params = table.parameters();
    let mut out = Vec::new();
    let sign_elem = |a: GenId, b: GenId, s: i64| {
        Element::term(table, Word::from_ids(&[a, b]), Scalar::from_int(s))
    };
    for &a in &params {
        if table.parity(a).is_odd() {
            out.push(RewriteRule::elimination(
                Word::from_ids(&[a, a]),
                Element::zero(table),
                "parameter nilpotency",
            ));
        }
    }
    for (i, &a) in params.iter().enumerate() {
        for &b in &params[i + 1..] {
            let s = koszul(table.parity(a), table.parity(b));
            out.push(RewriteRule::elimination(
                Word::from_ids(&[b, a]),
                sign_elem(a, b, s),
                "parameter supercommutation",
            ));
        }
    }
    for g in table.ids().filter(|&g| !table.is_parameter(g)) {
        for &a in &params {
            let s = koszul(table.parity(a), table.parity(g));
            out.push(RewriteRule::elimination(
                Word::from_ids(&[g, a]),
                sign_elem(a, g, s),
                "parameter supercommutation",
            ));
        }
    }
    out
}
