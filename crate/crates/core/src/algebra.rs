//! Graded generators, noncommutative words and scalar-weighted elements.
//!
//! Multiplication at this layer is free concatenation. Relations are applied
//! by the rewrite engine.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index of a generator inside its table. Indices follow the table's total
/// order, so comparing ids compares generators.
pub type GenId = u16;

/// Z2 degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

/// Sign `(-1)^(a*b)`.
pub fn koszul(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    /// Grassmann deformation parameters supercommute with everything and
    /// are kept leftmost in normal forms.
    pub parameter: bool,
}

/// Generators of one algebra listed in their total order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

impl GeneratorTable {
    /// Build a table; the slice order is the generator order.
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>> {
        let mut by_name = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.name == "p" || g.name == "q" {
                return Err(Error::Presentation(format!(
                    "`{}` is reserved for a central scalar parameter",
                    g.name
                )));
            }
            if by_name.insert(g.name.clone(), i as GenId).is_some() {
                return Err(Error::Presentation(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(Arc::new(GeneratorTable { gens, by_name }))
    }

    /// Convenience constructor from `(name, parity bit, is_parameter)`.
    pub fn from_spec(spec: &[(&str, u8, bool)]) -> Arc<Self> {
        Self::new(
            spec.iter()
                .map(|&(name, parity, parameter)| Generator {
                    name: name.to_string(),
                    parity: Parity::from_bit(parity),
                    parameter,
                })
                .collect(),
        )
        .expect("static generator table")
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn id(&self, name: &str) -> Result<GenId> {
        self.lookup(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.gens.len()).map(|i| i as GenId)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn parity(&self, id: GenId) -> Parity {
        self.gens[id as usize].parity
    }

    pub fn is_parameter(&self, id: GenId) -> bool {
        self.gens[id as usize].parameter
    }

    pub fn parameters(&self) -> Vec<GenId> {
        self.ids().filter(|&g| self.is_parameter(g)).collect()
    }
}

/// A noncommutative monomial. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub SmallVec<[GenId; 8]>);

impl Word {
    pub fn unit() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_ids(ids: &[GenId]) -> Self {
        Word(SmallVec::from_slice(ids))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[GenId] {
        &self.0
    }

    pub fn parity(&self, table: &GeneratorTable) -> Parity {
        self.0
            .iter()
            .fold(Parity::Even, |acc, &g| acc + table.parity(g))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Replace `len` letters at `pos` with `middle`.
    pub fn splice(&self, pos: usize, len: usize, middle: &[GenId]) -> Word {
        let mut v: SmallVec<[GenId; 8]> = SmallVec::with_capacity(self.len() - len + middle.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(middle);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// Position of the first occurrence of `pattern`.
    pub fn find(&self, pattern: &[GenId]) -> Option<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return None;
        }
        self.0.windows(pattern.len()).position(|w| w == pattern)
    }

    pub fn contains(&self, pattern: &[GenId]) -> bool {
        self.find(pattern).is_some()
    }

    /// Degree counting only non-parameter generators.
    pub fn degree(&self, table: &GeneratorTable) -> usize {
        self.0.iter().filter(|&&g| !table.is_parameter(g)).count()
    }

    pub fn display<'a>(&'a self, table: &'a GeneratorTable) -> WordDisplay<'a> {
        WordDisplay { word: self, table }
    }
}

/// Degree-lexicographic order under the generator order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    table: &'a GeneratorTable,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let ids = self.word.as_slice();
        let mut i = 0;
        while i < ids.len() {
            let mut j = i;
            while j < ids.len() && ids[j] == ids[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = &self.table.get(ids[i]).name;
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Result of [`Element::parity_of`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Homogeneous(Parity),
    Inhomogeneous,
}

/// A finite `Q(p, q)`-linear combination of words over one generator table.
#[derive(Clone, Debug)]
pub struct Element {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Element {}

fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Element {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Element {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Self::scalar(table, Scalar::one())
    }

    pub fn scalar(table: &Arc<GeneratorTable>, c: Scalar) -> Self {
        Self::term(table, Word::unit(), c)
    }

    pub fn term(table: &Arc<GeneratorTable>, w: Word, c: Scalar) -> Self {
        let mut e = Self::zero(table);
        e.add_term(w, c);
        e
    }

    pub fn word(table: &Arc<GeneratorTable>, w: Word) -> Self {
        Self::term(table, w, Scalar::one())
    }

    pub fn generator(table: &Arc<GeneratorTable>, id: GenId) -> Self {
        Self::word(table, Word::from_ids(&[id]))
    }

    /// Generator by name; panics on an unknown name.
    pub fn gen(table: &Arc<GeneratorTable>, name: &str) -> Self {
        Self::generator(table, table.id(name).expect("known generator"))
    }

    pub fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Self {
        let mut e = Self::zero(table);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Add `c * w` in place, dropping a resulting zero coefficient.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_table(&self, other: &Element) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Free (concatenation) product.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.check_table(other)?;
        let mut out = Element::zero(&self.table);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.table);
        }
        Element {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn parity_of(&self) -> Homogeneity {
        let mut seen: Option<Parity> = None;
        for w in self.terms.keys() {
            let p = w.parity(&self.table);
            match seen {
                None => seen = Some(p),
                Some(s) if s != p => return Homogeneity::Inhomogeneous,
                _ => {}
            }
        }
        // The zero element counts as even.
        Homogeneity::Homogeneous(seen.unwrap_or(Parity::Even))
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        match self.parity_of() {
            Homogeneity::Homogeneous(p) => Some(p),
            Homogeneity::Inhomogeneous => None,
        }
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Element {
        Element::from_terms(&self.table, self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Keep only the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Word) -> bool) -> Element {
        Element {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The set of generators that occur.
    pub fn support(&self) -> Vec<GenId> {
        let mut ids: Vec<GenId> = self.terms.keys().flat_map(|w| w.0.iter().copied()).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Re-express over another table by generator name.
    pub fn embed(&self, target: &Arc<GeneratorTable>) -> Result<Element> {
        if same_table(&self.table, target) {
            return Ok(self.clone());
        }
        let map: Vec<Result<GenId>> = self
            .table
            .generators()
            .iter()
            .map(|g| target.id(&g.name))
            .collect();
        let mut out = Element::zero(target);
        for (w, c) in &self.terms {
            let mut ids = SmallVec::new();
            for &g in w.as_slice() {
                match &map[g as usize] {
                    Ok(t) => ids.push(*t),
                    Err(_) => {
                        return Err(Error::UnknownGenerator(self.table.get(g).name.clone()))
                    }
                }
            }
            out.add_term(Word(ids), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    /// Canonical printing: terms in word order, coefficients as reduced
    /// fractions, repeated generators as powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if abs.is_constant() {
                abs.to_string()
            } else {
                format!("({abs})")
            };
            match (abs.is_one(), w.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", w.display(&self.table))?,
                (false, true) => write!(f, "{coeff}")?,
                (false, false) => write!(f, "{coeff}*{}", w.display(&self.table))?,
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("generator tables differ")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_add(&-rhs).expect("generator tables differ")
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("generator tables differ")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// How a generator map extends to words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Extension {
    /// `(uv) -> f(u) f(v)`.
    Multiplicative,
    /// `(uv) -> f(v) f(u)`.
    Reversing,
}

/// A map of generators to elements of a (possibly different) algebra,
/// extended linearly and (anti)multiplicatively to words.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Arc<GeneratorTable>,
    target: Arc<GeneratorTable>,
    images: Vec<Option<Element>>,
    extension: Extension,
}

impl Morphism {
    pub fn new(source: &Arc<GeneratorTable>, target: &Arc<GeneratorTable>) -> Self {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.len()],
            extension: Extension::Multiplicative,
        }
    }

    /// Send every generator to the same-named generator of the target, when
    /// one exists.
    pub fn by_name(source: &Arc<GeneratorTable>, target: &Arc<GeneratorTable>) -> Self {
        let mut m = Self::new(source, target);
        for g in source.ids() {
            if let Some(t) = target.lookup(&source.get(g).name) {
                m.images[g as usize] = Some(Element::generator(target, t));
            }
        }
        m
    }

    pub fn reversing(mut self) -> Self {
        self.extension = Extension::Reversing;
        self
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    pub fn source(&self) -> &Arc<GeneratorTable> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GeneratorTable> {
        &self.target
    }

    pub fn set(&mut self, name: &str, image: Element) -> Result<()> {
        let id = self.source.id(name)?;
        image.check_table(&Element::zero(&self.target))?;
        self.images[id as usize] = Some(image);
        Ok(())
    }

    pub fn with(mut self, name: &str, image: Element) -> Self {
        self.set(name, image).expect("valid morphism image");
        self
    }

    pub fn image(&self, id: GenId) -> Option<&Element> {
        self.images[id as usize].as_ref()
    }

    pub fn apply_word(&self, w: &Word) -> Result<Element> {
        let mut acc = Element::one(&self.target);
        let letters: Vec<GenId> = match self.extension {
            Extension::Multiplicative => w.as_slice().to_vec(),
            Extension::Reversing => w.as_slice().iter().rev().copied().collect(),
        };
        for g in letters {
            let img = self.images[g as usize]
                .as_ref()
                .ok_or_else(|| Error::MissingImage(self.source.get(g).name.clone()))?;
            acc = acc.try_mul(img)?;
        }
        Ok(acc)
    }

    /// Apply to an element; scalars are fixed.
    pub fn apply(&self, e: &Element) -> Result<Element> {
        if !same_table(&self.source, e.table()) {
            return Err(Error::TableMismatch);
        }
        let mut out = Element::zero(&self.target);
        for (w, c) in e.terms() {
            let img = self.apply_word(w)?;
            for (iw, ic) in img.terms {
                out.add_term(iw, ic * c.clone());
            }
        }
        Ok(out)
    }
}

/// Apply a generator map given as name -> element pairs.
pub fn apply_morphism(e: &Element, images: &[(&str, Element)]) -> Result<Element> {
    let target = images
        .first()
        .map(|(_, img)| img.table().clone())
        .unwrap_or_else(|| e.table().clone());
    let mut m = Morphism::new(e.table(), &target);
    for (name, img) in images {
        m.set(name, img.clone())?;
    }
    m.apply(e)
}
