//! The exterior differential, partial derivatives and star involutions of
//! the deformed superspace.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, GenId, GeneratorTable, Morphism, Parity, Word};
use crate::error::{Error, Result};
use crate::expr::parse_element;
use crate::presentations::{self, enumerate_basis_in, Presentation};
use crate::report::CheckReport;
use crate::scalar::Scalar;

/// Coordinates with their differentials and derivatives.
pub const COORDINATES: [(&str, &str, &str); 3] = [
    ("x", "dx", "px"),
    ("th1", "dth1", "pth1"),
    ("th2", "dth2", "pth2"),
];

fn derham() -> Result<Arc<Presentation>> {
    presentations::build("derham_h")
}

fn weyl() -> Result<Arc<Presentation>> {
    presentations::build("weyl_h")
}

fn coordinate_ids(table: &GeneratorTable) -> Result<Vec<GenId>> {
    COORDINATES.iter().map(|(c, _, _)| table.id(c)).collect()
}

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

/// `d` of a single word by the graded Leibniz rule, unreduced.
fn d_word(w: &Word, table: &Arc<GeneratorTable>, image: &[Option<GenId>]) -> Element {
    let mut out = Element::zero(table);
    let mut prefix_odd = false;
    let ids = w.as_slice();
    for (k, &g) in ids.iter().enumerate() {
        if let Some(dg) = image[g as usize] {
            let mut letters = ids.to_vec();
            letters[k] = dg;
            out.add_term(Word::from_ids(&letters), sign(prefix_odd));
        }
        prefix_odd ^= table.parity(g).is_odd();
    }
    out
}

fn d_images(table: &GeneratorTable) -> Result<Vec<Option<GenId>>> {
    let mut image = vec![None; table.len()];
    for (c, d, _) in COORDINATES {
        image[table.id(c)? as usize] = Some(table.id(d)?);
    }
    Ok(image)
}

/// `d f` in the de Rham complex. Parameters are constants: `d(h u) = -h du`.
pub fn differentiate(f: &Element) -> Result<Element> {
    let p = derham()?;
    let table = p.table();
    let f = f.embed(table).map_err(|e| match e {
        Error::UnknownGenerator(g) => {
            Error::Domain(format!("cannot differentiate: `{g}` is not in the de Rham complex"))
        }
        other => other,
    })?;
    let f = p.normalize(&f)?;
    let image = d_images(table)?;
    let mut out = Element::zero(table);
    for (w, c) in f.terms() {
        for (dw, dc) in d_word(w, table, &image).into_terms() {
            out.add_term(dw, dc * c.clone());
        }
    }
    p.normalize(&out)
}

/// Coordinate words of degree `0..=max_degree` that are irreducible.
pub fn coordinate_basis(p: &Presentation, max_degree: usize) -> Result<Vec<Word>> {
    let letters = coordinate_ids(p.table())?;
    Ok((0..=max_degree)
        .flat_map(|d| enumerate_basis_in(p, d, &letters))
        .collect())
}

/// `d(d w) = 0` for every coordinate basis word up to `max_degree`.
pub fn dsquare_check(max_degree: usize) -> Result<CheckReport> {
    let p = derham()?;
    let mut report = CheckReport::new("dsquare");
    for w in coordinate_basis(&p, max_degree)? {
        let e = Element::word(p.table(), w);
        let dd = differentiate(&differentiate(&e)?)?;
        report.record(dd.is_zero(), e.to_string(), &dd);
    }
    Ok(report)
}

/// `d` applied to both sides of every defining relation of the coordinate
/// algebra and of the cross relations agrees.
pub fn d_relations_check() -> Result<CheckReport> {
    let p = derham()?;
    let mut report = CheckReport::new("d respects relations");
    for source in ["superspace", "cross"] {
        for rule in p.rules_from(source) {
            let d = differentiate(&rule.relation())?;
            report.record(d.is_zero(), rule.display(), &d);
        }
    }
    Ok(report)
}

/// A random homogeneous coordinate-sector element of degree at most
/// `max_degree`, possibly with parameter prefixes.
pub fn random_element(
    p: &Presentation,
    rng: &mut ChaCha8Rng,
    max_degree: usize,
) -> Result<Element> {
    let table = p.table();
    let basis = coordinate_basis(p, max_degree)?;
    let prefixes: Vec<Element> = ["1", "h", "hp", "h*hp"]
        .iter()
        .map(|s| parse_element(s, table))
        .collect::<Result<_>>()?;
    let target = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
    let mut out = Element::zero(table);
    for _ in 0..rng.gen_range(1..=3) {
        let prefix = prefixes.choose(rng).expect("prefixes");
        let candidates: Vec<&Word> = basis
            .iter()
            .filter(|w| w.parity(table) + prefix.parity().unwrap_or(Parity::Even) == target)
            .collect();
        let w = candidates.choose(rng).expect("basis words of both parities");
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        let term = prefix * &Element::word(table, (*w).clone());
        out = &out + &term.scale(&Scalar::from_int(c));
    }
    let out = p.normalize(&out)?;
    if out.is_zero() {
        return random_element(p, rng, max_degree);
    }
    Ok(out)
}

/// Graded Leibniz rule on seeded random homogeneous pairs.
pub fn leibniz_check(trials: usize, seed: u64, max_degree: usize) -> Result<CheckReport> {
    let p = derham()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::new("leibniz");
    for _ in 0..trials {
        let f = random_element(&p, &mut rng, max_degree)?;
        let g = random_element(&p, &mut rng, max_degree)?;
        let lhs = differentiate(&(&f * &g))?;
        let odd = f.parity() == Some(Parity::Odd);
        let rhs = &(&differentiate(&f)? * &g) + &(&f * &differentiate(&g)?).scale(&sign(odd));
        let diff = p.normalize(&(&lhs - &rhs))?;
        report.record(diff.is_zero(), format!("f = {f}, g = {g}"), &diff);
    }
    report.absorb(d_relations_check()?);
    report.check = "leibniz".into();
    Ok(report)
}

fn derivative_of(table: &GeneratorTable, coordinate: &str) -> Result<GenId> {
    COORDINATES
        .iter()
        .find(|(c, _, _)| *c == coordinate)
        .map(|(_, _, d)| table.id(d))
        .unwrap_or_else(|| Err(Error::Domain(format!("`{coordinate}` is not a coordinate"))))
}

fn into_weyl(f: &Element, p: &Presentation) -> Result<Element> {
    f.embed(p.table()).map_err(|e| match e {
        Error::UnknownGenerator(g) => {
            Error::Domain(format!("partial derivatives act on functions; `{g}` is not one"))
        }
        other => other,
    })
}

fn strip_derivatives(e: &Element) -> Element {
    let derivatives: Vec<GenId> = COORDINATES
        .iter()
        .filter_map(|(_, _, d)| e.table().lookup(d))
        .collect();
    e.filter_terms(|w| !w.as_slice().iter().any(|g| derivatives.contains(g)))
}

/// `∂_v f`: normal-order `∂_v f` in the Weyl algebra and let every
/// remaining derivative act on 1.
pub fn partial(v: &str, f: &Element) -> Result<Element> {
    let p = weyl()?;
    let f = into_weyl(f, &p)?;
    let d = Element::generator(p.table(), derivative_of(p.table(), v)?);
    Ok(strip_derivatives(&p.normalize(&(&d * &f))?))
}

/// Act with an element of the Weyl algebra on a function: coordinates and
/// parameters multiply from the left, derivatives act by [`partial`].
pub fn apply_operator(op: &Element, f: &Element) -> Result<Element> {
    let p = weyl()?;
    let table = p.table();
    let op = op.embed(table)?;
    let f = into_weyl(f, &p)?;
    let mut out = Element::zero(table);
    for (w, c) in op.terms() {
        let mut acc = f.clone();
        for &g in w.as_slice().iter().rev() {
            let name = &table.get(g).name;
            acc = match COORDINATES.iter().find(|(_, _, d)| d == name) {
                Some((coord, _, _)) => partial(coord, &acc)?,
                None => p.normalize(&(&Element::generator(table, g) * &acc))?,
            };
        }
        out = &out + &acc.scale(c);
    }
    p.normalize(&out)
}

/// `d f = dx ∂_x f + dθ₁ ∂_θ₁ f + dθ₂ ∂_θ₂ f`.
pub fn expand_differential(f: &Element) -> Result<Element> {
    let p = derham()?;
    let table = p.table();
    let mut out = Element::zero(table);
    for (c, d, _) in COORDINATES {
        let part = partial(c, f)?.embed(table)?;
        out = &out + &(&Element::gen(table, d) * &part);
    }
    p.normalize(&out)
}

/// Duality of `d` with the partial derivatives on all basis words.
pub fn duality_check(max_degree: usize) -> Result<CheckReport> {
    let p = derham()?;
    let mut report = CheckReport::new("duality");
    for w in coordinate_basis(&p, max_degree)? {
        let f = Element::word(p.table(), w);
        let lhs = differentiate(&f)?;
        let rhs = expand_differential(&f)?;
        let diff = p.normalize(&(&lhs - &rhs))?;
        report.record(diff.is_zero(), f.to_string(), &diff);
    }
    Ok(report)
}

/// `∂_i(x_j) = δ_ij`.
pub fn delta_check() -> Result<CheckReport> {
    let p = weyl()?;
    let table = p.table();
    let mut report = CheckReport::new("partial on coordinates");
    for (i, _, _) in COORDINATES {
        for (j, _, _) in COORDINATES {
            let got = partial(i, &Element::gen(table, j))?;
            let want = if i == j { Element::one(table) } else { Element::zero(table) };
            report.record(got == want, format!("d/d{i} ({j})"), &got);
        }
    }
    Ok(report)
}

/// The derivative relations hold as identities of operators on every basis
/// word up to `max_degree`.
pub fn derivative_algebra_check(max_degree: usize) -> Result<CheckReport> {
    let p = weyl()?;
    let basis = coordinate_basis(&p, max_degree)?;
    let mut report = CheckReport::new("derivatives");
    for rule in p.rules_from("derivatives") {
        let lhs = Element::word(p.table(), rule.lhs().clone());
        for w in &basis {
            let f = Element::word(p.table(), w.clone());
            let a = apply_operator(&lhs, &f)?;
            let b = apply_operator(rule.rhs(), &f)?;
            let diff = p.normalize(&(&a - &b))?;
            report.record(diff.is_zero(), format!("{} on {f}", rule.display()), &diff);
        }
    }
    report.absorb(delta_check()?);
    report.check = "derivatives".into();
    Ok(report)
}

/// How an involution extends to products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionStyle {
    /// `(ξη)* = η* ξ*`.
    Reversing,
    /// `(ξη)# = ξ# η#`.
    Preserving,
}

/// Generator images of a star or superstar operation. Scalars are fixed.
#[derive(Clone, Debug)]
pub struct InvolutionSpec {
    pub name: String,
    pub style: InvolutionStyle,
    pub images: Vec<(String, String)>,
}

const STAR_PARAMETERS: [(&str, &str); 2] = [("h", "-h"), ("hp", "hp")];
const STAR_COORDINATES: [(&str, &str); 3] = [("x", "x"), ("th1", "th1"), ("th2", "th2 - h*x")];
const STAR_DIFFERENTIALS: [(&str, &str); 3] =
    [("dx", "dx + hp*dth2"), ("dth1", "-dth1"), ("dth2", "-dth2")];
const STAR_DERIVATIVES: [(&str, &str); 3] =
    [("px", "-px - h*pth2"), ("pth1", "pth1"), ("pth2", "pth2")];

impl InvolutionSpec {
    /// The star operation of a built-in presentation.
    pub fn star(presentation: &str) -> Result<Self> {
        let mut images: Vec<(&str, &str)> = STAR_PARAMETERS.to_vec();
        match presentation {
            "superspace_h" => images.extend(STAR_COORDINATES),
            "derham_h" => {
                images.extend(STAR_COORDINATES);
                images.extend(STAR_DIFFERENTIALS);
            }
            "weyl_h" => {
                images.extend(STAR_COORDINATES);
                images.extend(STAR_DERIVATIVES);
            }
            _ => {
                return Err(Error::Domain(format!(
                    "no star structure is defined for `{presentation}`"
                )))
            }
        }
        Ok(InvolutionSpec {
            name: format!("star ({presentation})"),
            style: InvolutionStyle::Reversing,
            images: images
                .into_iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        })
    }

    pub fn morphism(&self, table: &Arc<GeneratorTable>) -> Result<Morphism> {
        let mut m = Morphism::new(table, table);
        for (g, img) in &self.images {
            m.set(g, parse_element(img, table)?)?;
        }
        Ok(match self.style {
            InvolutionStyle::Reversing => m.reversing(),
            InvolutionStyle::Preserving => m,
        })
    }
}

/// Apply the involution and normalise in `p`.
pub fn star_apply(f: &Element, p: &Presentation, spec: &InvolutionSpec) -> Result<Element> {
    let m = spec.morphism(p.table())?;
    p.normalize(&m.apply(&f.embed(p.table())?)?)
}

/// Every defining relation is mapped into the ideal, and the involution
/// squares to the identity (reversing) or to the parity sign (preserving).
pub fn star_relation_check(p: &Presentation, spec: &InvolutionSpec) -> Result<CheckReport> {
    let m = spec.morphism(p.table())?;
    let mut report = CheckReport::new(spec.name.clone());
    for rule in p.rules.defining_rules() {
        let img = p.normalize(&m.apply(&rule.relation())?)?;
        report.record(img.is_zero(), rule.display(), &img);
    }
    for g in p.table().ids() {
        let e = Element::generator(p.table(), g);
        let twice = p.normalize(&m.apply(&m.apply(&e)?)?)?;
        let want = match spec.style {
            InvolutionStyle::Preserving if p.table().parity(g).is_odd() => -&e,
            _ => e.clone(),
        };
        report.record(twice == want, format!("involutive on {e}"), &twice);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dr(s: &str) -> Element {
        parse_element(s, derham().unwrap().table()).unwrap()
    }

    fn wy(s: &str) -> Element {
        parse_element(s, weyl().unwrap().table()).unwrap()
    }

    #[test]
    fn d_of_generator() {
        assert_eq!(differentiate(&dr("x")).unwrap(), dr("dx"));
        assert!(differentiate(&dr("dx")).unwrap().is_zero());
    }

    #[test]
    fn d_of_x_squared() {
        let got = differentiate(&dr("x^2")).unwrap();
        assert_eq!(got, dr("(2 + h*hp)*dx*x - hp*dx*th2 + hp*dth2*x"));
    }

    #[test]
    fn d_of_th2_squared_both_ways() {
        let a = differentiate(&dr("th2*th2")).unwrap();
        let b = differentiate(&dr("-h*th2*x")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, dr("h*dx*th2 + h*dth2*x + h*hp*dth2*th2"));
    }

    #[test]
    fn partials_of_x_squared() {
        assert_eq!(partial("x", &wy("x")).unwrap(), wy("1"));
        assert!(partial("th2", &wy("x")).unwrap().is_zero());
        assert_eq!(partial("x", &wy("x^2")).unwrap(), wy("(2 + h*hp)*x + hp*th2"));
    }

    #[test]
    fn classical_limit_of_partials() {
        let p = weyl().unwrap();
        let t = p.table();
        let zero = Morphism::by_name(t, t)
            .with("h", Element::zero(t))
            .with("hp", Element::zero(t));
        let at0 = |e: Element| p.normalize(&zero.apply(&e).unwrap()).unwrap();
        assert_eq!(at0(partial("th2", &wy("th2*x")).unwrap()), wy("x"));
        assert_eq!(at0(partial("th1", &wy("th2*th1")).unwrap()), wy("-th2"));
        assert_eq!(at0(partial("x", &wy("th1*x^3")).unwrap()), wy("3*th1*x^2"));
    }

    #[test]
    fn derivative_generators_rejected() {
        assert!(matches!(differentiate(&wy("px")), Err(Error::Domain(_))));
        assert!(matches!(partial("x", &dr("dx")), Err(Error::Domain(_))));
    }

    #[test]
    fn star_of_theta2() {
        let p = presentations::build("superspace_h").unwrap();
        let s = InvolutionSpec::star("superspace_h").unwrap();
        let th2 = p.parse("th2").unwrap();
        let once = star_apply(&th2, &p, &s).unwrap();
        assert_eq!(once.to_string(), "th2 - h*x");
        assert_eq!(star_apply(&once, &p, &s).unwrap(), th2);
        assert_eq!(star_apply(&p.parse("h*hp").unwrap(), &p, &s).unwrap(), p.parse("h*hp").unwrap());
    }

    #[test]
    fn superstar_is_multiplicative() {
        let p = presentations::build("superspace_h").unwrap();
        let s = InvolutionSpec {
            name: "superstar".into(),
            style: InvolutionStyle::Preserving,
            images: vec![
                ("h".into(), "h".into()),
                ("hp".into(), "hp".into()),
                ("x".into(), "x".into()),
                ("th1".into(), "th2".into()),
                ("th2".into(), "-th1".into()),
            ],
        };
        let got = star_apply(&p.parse("th1*x").unwrap(), &p, &s).unwrap();
        assert_eq!(got, p.parse("th2*x").unwrap());
        let twice = star_apply(&star_apply(&p.parse("th1").unwrap(), &p, &s).unwrap(), &p, &s);
        assert_eq!(twice.unwrap(), p.parse("-th1").unwrap());
    }
}
