//! Registry of the built-in algebras and the presentation text format.
//!
//! Each built-in presentation lists its relations in the expression grammar,
//! oriented left to right as written. Generator order is the normal order of
//! the printed right-hand sides: parameters, then differentials, then
//! coordinates, then derivatives; within each group the odd `2` index comes
//! first (`th2 < th1 < x`).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Element, Generator, GeneratorTable, Parity, Word};
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::rewrite::{step_limit, RewriteRule, RuleSet};

/// Identifiers of the built-in presentations.
pub const BUILTIN: &[&str] = &[
    "superspace_h",
    "exterior_hp",
    "derham_h",
    "weyl_h",
    "matrix_bialgebra",
    "superspace_q",
    "exterior_pq",
    "derham_q",
    "weyl_q",
    "derham_h_derived",
    "weyl_h_derived",
];

/// An identity expected to hold in the quotient but not used for rewriting.
#[derive(Clone, Debug)]
pub struct Check {
    pub lhs: Element,
    pub rhs: Element,
    pub source: String,
}

impl Check {
    pub fn relation(&self) -> Element {
        &self.lhs - &self.rhs
    }
}

/// A quotient of a free superalgebra by oriented relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub rules: RuleSet,
    pub checks: Vec<Check>,
    /// Printed relations kept as checks instead of rules.
    pub demoted: Vec<String>,
    pub citations: Vec<String>,
    /// Optional 9x9 operator given in a `[matrix]` section.
    pub matrix: Option<Vec<Vec<Element>>>,
}

impl Presentation {
    /// A presentation assembled from already-built rules.
    pub fn from_rules(
        name: &str,
        table: &Arc<GeneratorTable>,
        rules: Vec<RewriteRule>,
    ) -> Result<Self> {
        Ok(Presentation {
            name: name.to_string(),
            rules: RuleSet::new(table, rules)?,
            checks: Vec::new(),
            demoted: Vec::new(),
            citations: Vec::new(),
            matrix: None,
        })
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        self.rules.table()
    }

    pub fn parse(&self, text: &str) -> Result<Element> {
        parse_element(text, self.table())
    }

    pub fn normalize(&self, e: &Element) -> Result<Element> {
        self.rules.reduce(e)
    }

    /// Defining rule whose left-hand side is the given word, if any.
    pub fn rule_for(&self, lhs: &Word) -> Option<&RewriteRule> {
        self.rules.defining_rules().iter().find(|r| r.lhs() == lhs)
    }

    /// Defining rules with a given citation tag.
    pub fn rules_from(&self, source: &str) -> Vec<&RewriteRule> {
        self.rules
            .defining_rules()
            .iter()
            .filter(|r| r.source() == source)
            .collect()
    }

    /// Non-parameter generators.
    pub fn variables(&self) -> Vec<u16> {
        self.table()
            .ids()
            .filter(|&g| !self.table().is_parameter(g))
            .collect()
    }
}

struct Spec {
    gens: &'static [(&'static str, u8, bool)],
    groups: &'static [(&'static str, &'static [(&'static str, &'static str)])],
    checks: &'static [(&'static str, &'static str, &'static str)],
}

const PARAMS: [(&str, u8, bool); 2] = [("h", 1, true), ("hp", 1, true)];

macro_rules! gens {
    (params; $($g:expr),* $(,)?) => { &[PARAMS[0], PARAMS[1], $($g),*] };
    ($($g:expr),* $(,)?) => { &[$($g),*] };
}

const SUPERSPACE_H: &[(&str, &str)] = &[
    ("x*th1", "th1*x"),
    ("x*th2", "th2*x + h*x^2"),
    ("th1*th2", "-th2*th1"),
    ("th1*th1", "0"),
    ("th2*th2", "-h*th2*x"),
];

const EXTERIOR_HP: &[(&str, &str)] = &[
    ("phi*phi", "-hp*y2*phi"),
    ("phi*y1", "y1*phi"),
    ("phi*y2", "y2*phi - hp*y2^2"),
    ("y1*y2", "y2*y1"),
];

const DIFFERENTIALS_H: &[(&str, &str)] = &[
    ("dx*dx", "-hp*dth2*dx"),
    ("dx*dth1", "dth1*dx"),
    ("dx*dth2", "dth2*dx - hp*dth2*dth2"),
    ("dth1*dth2", "dth2*dth1"),
];

const CROSS_H: &[(&str, &str)] = &[
    ("x*dx", "(1 + h*hp)*dx*x + hp*(dth2*x - dx*th2)"),
    ("x*dth1", "dth1*x"),
    ("x*dth2", "dth2*x - h*dx*x + hp*dth2*th2 + h*hp*dx*th2"),
    ("th1*dx", "-dx*th1"),
    ("th1*dth1", "dth1*th1"),
    ("th1*dth2", "dth2*th1"),
    ("th2*dx", "-dx*th2 - h*dx*x - hp*dth2*th2 - h*hp*dth2*x"),
    ("th2*dth1", "dth1*th2"),
    ("th2*dth2", "(1 - h*hp)*dth2*th2 - h*(dx*th2 + dth2*x)"),
];

const WEYL_H: &[(&str, &str)] = &[
    ("px*x", "1 + x*px + h*x*pth2 + hp*th2*px + h*hp*(x*px + th2*pth2)"),
    ("px*th1", "th1*px"),
    ("px*th2", "th2*px - h*(x*px + th2*pth2)"),
    ("pth1*x", "x*pth1"),
    ("pth1*th1", "1 - th1*pth1"),
    ("pth1*th2", "-th2*pth1"),
    ("pth2*x", "x*pth2 + hp*(x*px + th2*pth2)"),
    ("pth2*th1", "-th1*pth2"),
    ("pth2*th2", "1 - th2*pth2 + h*x*pth2 + hp*th2*px + h*hp*(x*px + th2*pth2)"),
];

const DERIVATIVES_H: &[(&str, &str)] = &[
    ("px*pth1", "pth1*px"),
    ("px*pth2", "pth2*px + hp*px*px"),
    ("pth1*pth2", "-pth2*pth1"),
    ("pth1*pth1", "0"),
    ("pth2*pth2", "-hp*pth2*px"),
];

const BIALGEBRA: &[(&str, &str)] = &[
    ("a*alpha", "(1 + h*hp)*alpha*a - hp*(d*a + alpha*delta)"),
    ("a*beta", "beta*a + hp*(a^2 - e*a - beta*delta) - h*beta^2"),
    ("a*gamma", "(1 + h*hp)*gamma*a + h*(gamma*beta - c*a)"),
    ("a*c", "c*a - h*c*beta - hp*gamma*a + h*hp*gamma*beta"),
    ("a*delta", "delta*a + h*(a^2 - e*a + delta*beta) + hp*delta^2"),
    ("a*d", "d*a + h*alpha*a + hp*d*delta - h*hp*alpha*delta"),
    ("a*e", "e*a + h*beta*(a - e) + hp*(e - a)*delta"),
    ("alpha*beta", "-(1 + h*hp)*beta*alpha + hp*(beta*d + e*alpha)"),
    ("alpha*gamma", "-gamma*alpha"),
    ("alpha*c", "c*alpha"),
    ("alpha*delta", "-delta*alpha - h*a*alpha + hp*delta*d - h*hp*a*d"),
    ("alpha*d", "d*alpha + hp*d^2"),
    ("alpha*e", "e*alpha + h*beta*alpha + hp*e*d - h*hp*d*beta"),
    ("beta*gamma", "-gamma*beta + h*c*beta - hp*gamma*a - h*hp*c*a"),
    ("beta*c", "(1 - h*hp)*c*beta - hp*(c*a + gamma*beta)"),
    ("beta*delta", "-delta*beta + (h*beta + hp*delta)*(e - a)"),
    ("beta*d", "d*beta + h*alpha*beta + hp*d*e - h*hp*e*alpha"),
    ("beta*e", "e*beta + hp*(e^2 - e*a - delta*beta) - h*beta^2"),
    ("gamma*c", "c*gamma + h*c^2"),
    ("gamma*delta", "-(1 + h*hp)*delta*gamma + h*(e*gamma + delta*c)"),
    ("gamma*d", "d*gamma"),
    ("gamma*e", "e*gamma + h*e*c - hp*delta*gamma - h*hp*c*delta"),
    ("c*delta", "delta*c - h*e*c - hp*delta*gamma - h*hp*gamma*e"),
    ("c*d", "d*c"),
    ("c*e", "(1 - h*hp)*e*c + hp*(e*gamma - delta*c)"),
    ("delta*d", "(1 - h*hp)*d*delta + h*(alpha*delta - d*a)"),
    ("delta*e", "e*delta + h*(e^2 - e*a + beta*delta) + hp*delta^2"),
    ("d*e", "(1 - h*hp)*e*d + h*(beta*d - e*alpha)"),
    ("alpha*alpha", "hp*alpha*d"),
    ("beta*beta", "hp*beta*(e - a)"),
    ("gamma*gamma", "h*gamma*c"),
    ("delta*delta", "h*delta*(e - a)"),
    ("b*a", "a*b"),
    ("b*c", "c*b"),
    ("b*d", "d*b"),
    ("b*e", "e*b"),
    ("b*alpha", "alpha*b"),
    ("b*beta", "beta*b"),
    ("b*gamma", "gamma*b"),
    ("b*delta", "delta*b"),
];

const BIALGEBRA_CHECKS: &[(&str, &str, &str)] = &[
    ("a*(h*beta + hp*delta)", "(h*beta + hp*delta)*a", "bialgebra"),
    ("e*(h*beta + hp*delta)", "(h*beta + hp*delta)*e", "bialgebra"),
];

const SUPERSPACE_Q: &[(&str, &str)] = &[
    ("X*Th1", "q*Th1*X"),
    ("X*Th2", "q*Th2*X"),
    ("Th1*Th2", "-q^-1*Th2*Th1"),
    ("Th1*Th1", "0"),
    ("Th2*Th2", "0"),
];

const EXTERIOR_PQ: &[(&str, &str)] = &[
    ("Phi*Phi", "0"),
    ("Phi*Y1", "q*p^-1*Y1*Phi"),
    ("Phi*Y2", "p*q*Y2*Phi"),
    ("Y1*Y2", "p*q^-1*Y2*Y1"),
];

const DIFFERENTIALS_Q: &[(&str, &str)] = &[
    ("dX*dX", "0"),
    ("dX*dTh1", "q*p^-1*dTh1*dX"),
    ("dX*dTh2", "p*q*dTh2*dX"),
    ("dTh1*dTh2", "p*q^-1*dTh2*dTh1"),
];

const CROSS_Q: &[(&str, &str)] = &[
    ("X*dX", "p*dX*X"),
    ("X*dTh1", "q*dTh1*X + (p - 1)*dX*Th1"),
    ("X*dTh2", "p*q*dTh2*X"),
    ("Th1*dX", "-p*q^-1*dX*Th1"),
    ("Th1*dTh1", "dTh1*Th1"),
    ("Th1*dTh2", "p*q^-1*dTh2*Th1"),
    ("Th2*dX", "-q^-1*dX*Th2 + (1 - p)*dTh2*X"),
    ("Th2*dTh1", "q*dTh1*Th2 + (1 - p)*dTh2*Th1"),
    ("Th2*dTh2", "dTh2*Th2"),
];

const WEYL_Q: &[(&str, &str)] = &[
    ("pX*X", "1 + p*X*pX + (p - 1)*Th1*pTh1"),
    ("pX*Th1", "p*q^-1*Th1*pX"),
    ("pX*Th2", "q^-1*Th2*pX"),
    ("pTh1*X", "q*X*pTh1"),
    ("pTh1*Th1", "1 - Th1*pTh1"),
    ("pTh1*Th2", "-q*Th2*pTh1"),
    ("pTh2*X", "p*q*X*pTh2"),
    ("pTh2*Th1", "-p*q^-1*Th1*pTh2"),
    ("pTh2*Th2", "1 - Th2*pTh2 + (p - 1)*(X*pX + Th1*pTh1)"),
];

/// Cross relations of the contracted calculus at generic `p`, `q`, in the
/// differential names `dx = phi`, `dth_i = y_i`. The relation for
/// `th1*dx` is not among the printed ones.
const CROSS_H_DERIVED: &[(&str, &str)] = &[
    ("x*dx", "(p + q^-1*h*hp)*dx*x + hp*(dth2*x - q^-1*dx*th2)"),
    ("x*dth1", "q*dth1*x + (p - 1)*dx*th1"),
    ("x*dth2", "p*q*dth2*x + h*(q^-1*hp*dx*th2 - p*dx*x) + hp*dth2*th2"),
    ("th1*dth1", "dth1*th1"),
    ("th1*dth2", "p*q^-1*dth2*th1"),
    (
        "th2*dx",
        "-q^-1*dx*th2 - q^-1*h*dx*x - q^-1*hp*dth2*th2 + (1 - p - q^-1*h*hp)*dth2*x",
    ),
    ("th2*dth1", "q*dth1*th2 + (1 - p)*dth2*th1"),
    ("th2*dth2", "(1 - q^-1*h*hp)*dth2*th2 - h*(q^-1*dx*th2 + p*dth2*x)"),
];

const WEYL_H_DERIVED: &[(&str, &str)] = &[
    (
        "px*x",
        "1 + (p + q^-1*h*hp)*x*px + p*h*x*pth2 + q^-1*hp*th2*px + q^-1*h*hp*th2*pth2 + (p - 1)*th1*pth1",
    ),
    ("px*th1", "p*q^-1*th1*px"),
    ("px*th2", "q^-1*th2*px - q^-1*h*(x*px + th2*pth2)"),
    ("pth1*x", "q*x*pth1"),
    ("pth1*th1", "1 - th1*pth1"),
    ("pth1*th2", "-q*th2*pth1"),
    ("pth2*x", "p*q*x*pth2 + hp*(x*px + th2*pth2)"),
    ("pth2*th1", "-p*q^-1*th1*pth2"),
    (
        "pth2*th2",
        "1 - (1 - q^-1*h*hp)*th2*pth2 + p*h*x*pth2 + q^-1*hp*th2*px + (p - 1 + q^-1*h*hp)*x*px + (p - 1)*th1*pth1",
    ),
];

const DERHAM_H_GENS: &[(&str, u8, bool)] = gens!(params;
    ("dth2", 0, false), ("dth1", 0, false), ("dx", 1, false),
    ("th2", 1, false), ("th1", 1, false), ("x", 0, false));

const WEYL_H_GENS: &[(&str, u8, bool)] = gens!(params;
    ("th2", 1, false), ("th1", 1, false), ("x", 0, false),
    ("pth2", 1, false), ("pth1", 1, false), ("px", 0, false));

fn spec(name: &str) -> Option<Spec> {
    Some(match name {
        "superspace_h" => Spec {
            gens: gens!(params; ("th2", 1, false), ("th1", 1, false), ("x", 0, false)),
            groups: &[("superspace", SUPERSPACE_H)],
            checks: &[],
        },
        "exterior_hp" => Spec {
            gens: gens!(params; ("y2", 0, false), ("y1", 0, false), ("phi", 1, false)),
            groups: &[("exterior", EXTERIOR_HP)],
            checks: &[],
        },
        "derham_h" => Spec {
            gens: DERHAM_H_GENS,
            groups: &[
                ("superspace", SUPERSPACE_H),
                ("differentials", DIFFERENTIALS_H),
                ("cross", CROSS_H),
            ],
            checks: &[],
        },
        "weyl_h" => Spec {
            gens: WEYL_H_GENS,
            groups: &[
                ("superspace", SUPERSPACE_H),
                ("weyl", WEYL_H),
                ("derivatives", DERIVATIVES_H),
            ],
            checks: &[],
        },
        "matrix_bialgebra" => Spec {
            gens: gens!(params;
                ("e", 0, false), ("d", 0, false), ("delta", 1, false), ("c", 0, false),
                ("gamma", 1, false), ("beta", 1, false), ("alpha", 1, false), ("a", 0, false),
                ("b", 0, false)),
            groups: &[("bialgebra", BIALGEBRA)],
            checks: BIALGEBRA_CHECKS,
        },
        "superspace_q" => Spec {
            gens: gens!(("Th2", 1, false), ("Th1", 1, false), ("X", 0, false)),
            groups: &[("superspace", SUPERSPACE_Q)],
            checks: &[],
        },
        "exterior_pq" => Spec {
            gens: gens!(("Y2", 0, false), ("Y1", 0, false), ("Phi", 1, false)),
            groups: &[("exterior", EXTERIOR_PQ)],
            checks: &[],
        },
        "derham_q" => Spec {
            gens: gens!(
                ("dTh2", 0, false), ("dTh1", 0, false), ("dX", 1, false),
                ("Th2", 1, false), ("Th1", 1, false), ("X", 0, false)),
            groups: &[
                ("superspace", SUPERSPACE_Q),
                ("differentials", DIFFERENTIALS_Q),
                ("cross", CROSS_Q),
            ],
            checks: &[],
        },
        "weyl_q" => Spec {
            gens: gens!(
                ("Th2", 1, false), ("Th1", 1, false), ("X", 0, false),
                ("pTh2", 1, false), ("pTh1", 1, false), ("pX", 0, false)),
            groups: &[("superspace", SUPERSPACE_Q), ("weyl", WEYL_Q)],
            checks: &[],
        },
        "derham_h_derived" => Spec {
            gens: DERHAM_H_GENS,
            groups: &[("cross", CROSS_H_DERIVED)],
            checks: &[],
        },
        "weyl_h_derived" => Spec {
            gens: WEYL_H_GENS,
            groups: &[("weyl", WEYL_H_DERIVED)],
            checks: &[],
        },
        _ => return None,
    })
}

/// Parse `lhs = rhs` into an oriented rule; `lhs` must be a single word.
pub fn parse_rule(
    table: &Arc<GeneratorTable>,
    lhs: &str,
    rhs: &str,
    source: &str,
) -> Result<RewriteRule> {
    let l = parse_element(lhs, table)?;
    let word = match l.terms().iter().next() {
        Some((w, c)) if l.len() == 1 && c.is_one() => w.clone(),
        _ => {
            return Err(Error::Rule {
                lhs: lhs.to_string(),
                msg: "left-hand side must be a single monomial with coefficient 1".into(),
            })
        }
    };
    let r = parse_element(rhs, table)?;
    // Parameters are moved to the front before the rule is stored, so the
    // right-hand side is written in the printed normal order.
    let r = RuleSet::core(table).reduce(&r)?;
    RewriteRule::new(word, r, source)
}

fn build_uncached(name: &str) -> Result<Presentation> {
    let spec = spec(name).ok_or_else(|| Error::UnknownPresentation(name.to_string()))?;
    let table = GeneratorTable::from_spec(spec.gens);
    let mut rules = Vec::new();
    let mut citations = Vec::new();
    for (source, group) in spec.groups {
        citations.push(source.to_string());
        for (lhs, rhs) in group.iter() {
            rules.push(parse_rule(&table, lhs, rhs, source)?);
        }
    }
    let mut checks = Vec::new();
    let mut demoted = Vec::new();
    for (lhs, rhs, source) in spec.checks {
        checks.push(Check {
            lhs: parse_element(lhs, &table)?,
            rhs: parse_element(rhs, &table)?,
            source: source.to_string(),
        });
        demoted.push(format!("{lhs} = {rhs}"));
    }
    Ok(Presentation {
        name: name.to_string(),
        rules: RuleSet::new(&table, rules)?,
        checks,
        demoted,
        citations,
        matrix: None,
    })
}

/// A built-in presentation. Each one is constructed once and shared.
pub fn build(name: &str) -> Result<Arc<Presentation>> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, Arc<Presentation>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().expect("registry lock").get(name) {
        return Ok(p.clone());
    }
    let p = Arc::new(build_uncached(name)?);
    cache
        .lock()
        .expect("registry lock")
        .entry(name.to_string())
        .or_insert(p.clone());
    Ok(p)
}

/// A built-in id, or a path to a presentation file.
pub fn resolve(name_or_path: &str) -> Result<Arc<Presentation>> {
    if spec(name_or_path).is_some() {
        return build(name_or_path);
    }
    let path = Path::new(name_or_path);
    if path.exists() {
        return load_file(path).map(Arc::new);
    }
    Err(Error::UnknownPresentation(name_or_path.to_string()))
}

/// Irreducible words of the given degree in the non-parameter generators,
/// sorted in word order.
pub fn enumerate_basis(p: &Presentation, degree: usize) -> Vec<Word> {
    enumerate_basis_in(p, degree, &p.variables())
}

/// Irreducible words of the given degree using only `letters`.
pub fn enumerate_basis_in(p: &Presentation, degree: usize, letters: &[u16]) -> Vec<Word> {
    let mut frontier = vec![Word::unit()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in letters {
                let mut ids = w.as_slice().to_vec();
                ids.push(g);
                let nw = Word::from_ids(&ids);
                // Any redex in nw must end at the new letter.
                if p.rules.is_irreducible(&nw) {
                    next.push(nw);
                }
            }
        }
        frontier = next;
    }
    frontier.sort();
    frontier.dedup();
    frontier
}

/// Confluence of a presentation's rule set at the given overlap length.
pub fn confluence(p: &Presentation, max_len: usize) -> Result<crate::rewrite::ConfluenceReport> {
    p.rules.check_confluence(max_len, step_limit())
}

/// Load a presentation from the text format:
///
/// ```text
/// [generators]
/// h 1 param
/// x 0
/// [order]
/// h x
/// [relations]
/// x*x = 0
/// [checks]
/// x*x*x = 0
/// [matrix]
/// 1, 0, ..., 0        # nine rows of nine comma-separated entries
/// ```
pub fn load_file(path: &Path) -> Result<Presentation> {
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".into());
    parse_presentation(&name, &text)
}

/// Parse the presentation text format (see [`load_file`]).
pub fn parse_presentation(name: &str, text: &str) -> Result<Presentation> {
    let mut sections: BTreeMap<&str, Vec<(usize, &str)>> = BTreeMap::new();
    let mut current: Option<&str> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            let sec = &line[1..line.len() - 1];
            if !["generators", "order", "relations", "checks", "matrix"].contains(&sec) {
                return Err(Error::Presentation(format!(
                    "line {}: unknown section [{sec}]",
                    lineno + 1
                )));
            }
            current = Some(sec);
            sections.entry(sec).or_default();
            continue;
        }
        let Some(sec) = current else {
            return Err(Error::Presentation(format!(
                "line {}: content before the first section",
                lineno + 1
            )));
        };
        sections.entry(sec).or_default().push((lineno + 1, line));
    }

    let mut gens = Vec::new();
    for (lineno, line) in sections.get("generators").cloned().unwrap_or_default() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Presentation(format!("line {lineno}: expected `name parity [param]`"));
        let (name, parity) = match fields.as_slice() {
            [n, p] | [n, p, "param"] => (n.to_string(), p.parse::<u8>().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        if parity > 1 {
            return Err(bad());
        }
        gens.push(Generator {
            name,
            parity: Parity::from_bit(parity),
            parameter: fields.len() == 3,
        });
    }
    if let Some(order) = sections.get("order") {
        let names: Vec<&str> = order.iter().flat_map(|(_, l)| l.split_whitespace()).collect();
        if names.len() != gens.len() {
            return Err(Error::Presentation(
                "[order] must list every generator exactly once".into(),
            ));
        }
        let mut ordered = Vec::new();
        for n in names {
            let g = gens
                .iter()
                .find(|g| g.name == n)
                .ok_or_else(|| Error::UnknownGenerator(n.to_string()))?;
            ordered.push(g.clone());
        }
        gens = ordered;
    }
    let table = GeneratorTable::new(gens)?;

    let split_eq = |lineno: usize, line: &str| -> Result<(String, String)> {
        let mut parts = line.splitn(2, '=');
        match (parts.next(), parts.next()) {
            (Some(l), Some(r)) => Ok((l.trim().to_string(), r.trim().to_string())),
            _ => Err(Error::Presentation(format!("line {lineno}: expected `lhs = rhs`"))),
        }
    };

    let mut rules = Vec::new();
    for (lineno, line) in sections.get("relations").cloned().unwrap_or_default() {
        let (l, r) = split_eq(lineno, line)?;
        rules.push(parse_rule(&table, &l, &r, &format!("line {lineno}"))?);
    }
    let mut checks = Vec::new();
    for (lineno, line) in sections.get("checks").cloned().unwrap_or_default() {
        let (l, r) = split_eq(lineno, line)?;
        checks.push(Check {
            lhs: parse_element(&l, &table)?,
            rhs: parse_element(&r, &table)?,
            source: format!("line {lineno}"),
        });
    }
    let matrix = match sections.get("matrix") {
        None => None,
        Some(rows) => {
            if rows.len() != 9 {
                return Err(Error::Presentation("[matrix] needs nine rows".into()));
            }
            let mut m = Vec::new();
            for (lineno, line) in rows {
                let row: Vec<Element> = line
                    .split(',')
                    .map(|s| parse_element(s.trim(), &table))
                    .collect::<Result<_>>()?;
                if row.len() != 9 {
                    return Err(Error::Presentation(format!(
                        "line {lineno}: [matrix] rows need nine entries"
                    )));
                }
                m.push(row);
            }
            Some(m)
        }
    };
    Ok(Presentation {
        name: name.to_string(),
        rules: RuleSet::new(&table, rules)?,
        checks,
        demoted: Vec::new(),
        citations: vec![name.to_string()],
        matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_builds() {
        for name in BUILTIN {
            build(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(build("nope"), Err(Error::UnknownPresentation(_))));
    }

    #[test]
    fn superspace_rule_counts() {
        let p = build("superspace_h").unwrap();
        assert_eq!(p.rules.defining_rules().len(), 5);
        let d = build("derham_h").unwrap();
        assert_eq!(d.rules_from("superspace").len(), 5);
        assert_eq!(d.rules_from("differentials").len(), 4);
        assert_eq!(d.rules_from("cross").len(), 9);
    }

    #[test]
    fn bialgebra_has_centrality_rules() {
        let p = build("matrix_bialgebra").unwrap();
        let t = p.table();
        for name in ["a", "c", "d", "e", "alpha", "beta", "gamma", "delta"] {
            let lhs = Word::from_ids(&[t.id("b").unwrap(), t.id(name).unwrap()]);
            let rule = p.rule_for(&lhs).expect("centrality rule");
            assert_eq!(rule.rhs().to_string(), format!("{name}*b"));
        }
        assert_eq!(p.demoted.len(), 2);
    }

    #[test]
    fn superspace_basis_low_degrees() {
        let p = build("superspace_h").unwrap();
        let t = p.table().clone();
        let names = |ws: Vec<Word>| -> Vec<String> {
            ws.iter().map(|w| w.display(&t).to_string()).collect()
        };
        assert_eq!(names(enumerate_basis(&p, 0)), vec!["1"]);
        assert_eq!(names(enumerate_basis(&p, 2)), vec!["th2*th1", "th2*x", "th1*x", "x^2"]);
    }

    #[test]
    fn text_format_roundtrip() {
        let text = "\
[generators]
h 1 param
x 0
th 1
[order]
h th x
[relations]
x*th = th*x + h*x^2
th*th = 0
[checks]
th*th*th = 0
";
        let p = parse_presentation("toy", text).unwrap();
        assert_eq!(p.rules.defining_rules().len(), 2);
        assert_eq!(p.checks.len(), 1);
        let e = p.parse("x*th").unwrap();
        assert_eq!(p.normalize(&e).unwrap().to_string(), "th*x + h*x^2");
    }

    #[test]
    fn text_format_errors() {
        assert!(parse_presentation("bad", "x 0").is_err());
        assert!(parse_presentation("bad", "[generators]\nx 2").is_err());
        assert!(parse_presentation("bad", "[generators]\nx 0\n[relations]\nx*x + x = 0").is_err());
    }
}
