//! Dense integer polynomials in the two central parameters `p` and `q`.
//!
//! A [`Poly`] stores its coefficients as `rows[j][i]`, the coefficient of
//! `p^i q^j`. Trailing zeros are always trimmed, so the stored form is unique
//! and structural equality is polynomial equality. GCDs use the primitive
//! polynomial remainder sequence, viewing a bivariate polynomial as a
//! univariate polynomial in `q` over `Z[p]`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial over the integers, low degree first, trimmed.
type UPoly = Vec<BigInt>;

fn utrim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn uadd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let mut out: UPoly = (0..a.len().max(b.len()))
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x + y
        })
        .collect();
    utrim(&mut out);
    out
}

fn uneg(a: &[BigInt]) -> UPoly {
    a.iter().map(|c| -c).collect()
}

fn usub(a: &[BigInt], b: &[BigInt]) -> UPoly {
    uadd(a, &uneg(b))
}

fn umul(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    utrim(&mut out);
    out
}

fn uscale(a: &[BigInt], c: &BigInt) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x * c).collect();
    utrim(&mut out);
    out
}

fn ucontent(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Exact quotient `a / b`; panics if the division is not exact.
fn udiv_exact(a: &[BigInt], b: &[BigInt]) -> UPoly {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while !r.is_empty() {
        let dr = r.len() - 1;
        assert!(dr >= db, "inexact polynomial division");
        let (c, rem) = r[dr].div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        quot[shift] = c;
        utrim(&mut r);
    }
    utrim(&mut quot);
    quot
}

/// Pseudo-remainder of `a` by `b`.
fn uprem(a: &[BigInt], b: &[BigInt]) -> UPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        r = uscale(&r, lb);
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &lr * bk;
        }
        utrim(&mut r);
    }
    r
}

fn uprimitive(a: &[BigInt]) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let c = ucontent(a);
    let mut out: UPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = uneg(&out);
    }
    out
}

/// GCD in `Z[p]` with positive leading coefficient.
fn ugcd(a: &[BigInt], b: &[BigInt]) -> UPoly {
    if a.is_empty() {
        return uprimitive_keep_content(b);
    }
    if b.is_empty() {
        return uprimitive_keep_content(a);
    }
    let c = ucontent(a).gcd(&ucontent(b));
    let mut x = uprimitive(a);
    let mut y = uprimitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = uprem(&x, &y);
        x = y;
        y = uprimitive(&r);
    }
    uscale(&x, &c)
}

fn uprimitive_keep_content(a: &[BigInt]) -> UPoly {
    let mut out = a.to_vec();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = uneg(&out);
    }
    out
}

/// A polynomial in `p` and `q` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    rows: Vec<UPoly>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut out = Poly { rows: vec![vec![c]] };
        out.trim();
        out
    }

    /// The monomial `c * p^i * q^j`.
    pub fn monomial(c: BigInt, p_deg: usize, q_deg: usize) -> Self {
        let mut rows = vec![Vec::new(); q_deg + 1];
        let mut row = vec![BigInt::zero(); p_deg + 1];
        row[p_deg] = c;
        rows[q_deg] = row;
        let mut out = Poly { rows };
        out.trim();
        out
    }

    pub fn p() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    fn trim(&mut self) {
        for r in &mut self.rows {
            utrim(r);
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The value of a constant polynomial, or `None` if `p` or `q` occur.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.rows.as_slice() {
            [] => Some(BigInt::zero()),
            [row] if row.len() == 1 => Some(row[0].clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// Nonzero terms as `(p_deg, q_deg, coeff)`, highest first in graded
    /// lexicographic order with `p < q`.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out.sort_by(|a, b| grlex(b.0, b.1, a.0, a.1));
        out
    }

    /// Leading coefficient in graded lexicographic order (`p < q`).
    pub fn leading_coeff(&self) -> BigInt {
        self.terms().into_iter().next().map(|t| t.2).unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        Poly {
            rows: self.rows.iter().map(|r| uneg(r)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let empty = Vec::new();
        let mut out = Poly {
            rows: (0..n)
                .map(|j| {
                    uadd(
                        self.rows.get(j).unwrap_or(&empty),
                        other.rows.get(j).unwrap_or(&empty),
                    )
                })
                .collect(),
        };
        out.trim();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                let prod = umul(a, b);
                rows[i + j] = uadd(&rows[i + j], &prod);
            }
        }
        let mut out = Poly { rows };
        out.trim();
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Poly {
            rows: self.rows.iter().map(|r| uscale(r, c)).collect(),
        };
        out.trim();
        out
    }

    fn scale_upoly(&self, c: &[BigInt]) -> Self {
        let mut out = Poly {
            rows: self.rows.iter().map(|r| umul(r, c)).collect(),
        };
        out.trim();
        out
    }

    fn q_degree(&self) -> usize {
        self.rows.len() - 1
    }

    fn content(&self) -> UPoly {
        self.rows
            .iter()
            .fold(Vec::new(), |g: UPoly, r| if r.is_empty() { g } else { ugcd(&g, r) })
    }

    fn div_upoly(&self, c: &[BigInt]) -> Self {
        Poly {
            rows: self.rows.iter().map(|r| udiv_exact(r, c)).collect(),
        }
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.div_upoly(&self.content())
    }

    /// Pseudo-remainder in `q` over `Z[p]`.
    fn prem(&self, b: &Self) -> Self {
        let db = b.q_degree();
        let lb = &b.rows[db];
        let mut r = self.clone();
        while !r.is_zero() && r.q_degree() >= db {
            let dr = r.q_degree();
            let lr = r.rows[dr].clone();
            let shift = dr - db;
            r = r.scale_upoly(lb);
            for (k, bk) in b.rows.iter().enumerate() {
                let t = umul(&lr, bk);
                r.rows[shift + k] = usub(&r.rows[shift + k], &t);
            }
            r.trim();
        }
        r
    }

    /// Greatest common divisor, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.sign_normalized();
        }
        if other.is_zero() {
            return self.sign_normalized();
        }
        let content = ugcd(&self.content(), &other.content());
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.q_degree() < b.q_degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale_upoly(&content).sign_normalized()
    }

    fn sign_normalized(&self) -> Self {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient; panics when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let db = other.q_degree();
        let lb = &other.rows[db];
        let mut r = self.clone();
        let mut quot = vec![Vec::new(); self.rows.len().saturating_sub(db).max(1)];
        while !r.is_zero() {
            let dr = r.q_degree();
            assert!(dr >= db, "inexact polynomial division");
            let c = udiv_exact(&r.rows[dr], lb);
            let shift = dr - db;
            for (k, bk) in other.rows.iter().enumerate() {
                let t = umul(&c, bk);
                r.rows[shift + k] = usub(&r.rows[shift + k], &t);
            }
            quot[shift] = c;
            r.trim();
        }
        let mut out = Poly { rows: quot };
        out.trim();
        out
    }

    /// Evaluate at integer values of `p` and `q`.
    pub fn eval(&self, p: &BigInt, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for row in self.rows.iter().rev() {
            let mut inner = BigInt::zero();
            for c in row.iter().rev() {
                inner = inner * p + c;
            }
            acc = acc * q + inner;
        }
        acc
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|c| !c.is_zero()).count())
            .sum()
    }
}

fn grlex(pa: usize, qa: usize, pb: usize, qb: usize) -> Ordering {
    (pa + qa).cmp(&(pb + qb)).then(qa.cmp(&qb))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || (*i == 0 && *j == 0) {
                factors.push(abs.to_string());
            }
            for (name, deg) in [("p", *i), ("q", *j)] {
                match deg {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    d => factors.push(format!("{name}^{d}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Poly {
        Poly::constant(BigInt::from(n))
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (q - 1)(p q - 1) and (q - 1)(p + 2)
        let a = Poly::q().sub(&c(1)).mul(&Poly::p().mul(&Poly::q()).sub(&c(1)));
        let b = Poly::q().sub(&c(1)).mul(&Poly::p().add(&c(2)));
        assert_eq!(a.gcd(&b), Poly::q().sub(&c(1)));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = Poly::p().scale(&BigInt::from(6));
        let b = Poly::p().mul(&Poly::q()).scale(&BigInt::from(4));
        assert_eq!(a.gcd(&b), Poly::p().scale(&BigInt::from(2)));
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = Poly::p().add(&Poly::q()).mul(&Poly::p().sub(&c(3)));
        let b = Poly::p().sub(&c(3));
        assert_eq!(a.div_exact(&b), Poly::p().add(&Poly::q()));
    }

    #[test]
    fn display_grlex() {
        let a = Poly::p().mul(&Poly::q()).sub(&c(1)).add(&Poly::q().scale(&BigInt::from(-2)));
        assert_eq!(a.to_string(), "p*q - 2*q - 1");
    }

    #[test]
    fn eval_at_one() {
        let a = Poly::p().mul(&Poly::q()).sub(&c(1));
        assert!(a.eval(&BigInt::one(), &BigInt::one()).is_zero());
    }
}
