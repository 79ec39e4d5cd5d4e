//! Exact coefficients: rational functions in the central parameters `p`, `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly;

/// An element of `Q(p, q)` in canonical form.
///
/// The numerator and denominator share no common factor (including integer
/// content) and the denominator has a positive leading coefficient, so two
/// scalars are equal exactly when their stored forms are identical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar {
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_constants(BigInt::from(n), BigInt::from(d))
    }

    pub fn p() -> Self {
        Scalar {
            num: Poly::p(),
            den: Poly::one(),
        }
    }

    pub fn q() -> Self {
        Scalar {
            num: Poly::q(),
            den: Poly::one(),
        }
    }

    fn from_constants(n: BigInt, d: BigInt) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if n.is_zero() {
            return Self::zero();
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Scalar {
            num: Poly::constant(n),
            den: Poly::constant(d),
        }
    }

    /// Build `num / den`, reducing to canonical form. Panics if `den` is zero.
    pub fn from_polys(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if let (Some(n), Some(d)) = (num.as_constant(), den.as_constant()) {
            return Self::from_constants(n, d);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some((n, d))` when the scalar is a rational number.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        Some((self.num.as_constant()?, self.den.as_constant()?))
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    /// True when the printed form should carry a leading minus sign.
    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_polys(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }

    /// Evaluate at an integer point; `None` at a pole.
    pub fn eval(&self, p: &BigInt, q: &BigInt) -> Option<Scalar> {
        let d = self.den.eval(p, q);
        if d.is_zero() {
            return None;
        }
        Some(Self::from_constants(self.num.eval(p, q), d))
    }

    fn add_impl(&self, other: &Self) -> Self {
        if let (Some((a, b)), Some((c, d))) = (self.as_rational(), other.as_rational()) {
            return Self::from_constants(a * &d + c * &b, b * d);
        }
        if self.den == other.den {
            return Self::from_polys(self.num.add(&other.num), self.den.clone());
        }
        Self::from_polys(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let (Some((a, b)), Some((c, d))) = (self.as_rational(), other.as_rational()) {
            return Self::from_constants(a * c, b * d);
        }
        Self::from_polys(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, |a, b| a.add_impl(b));
scalar_binop!(Sub, sub, |a, b| a.add_impl(&-b));
scalar_binop!(Mul, mul, |a, b| a.mul_impl(b));
scalar_binop!(Div, div, |a, b| a.mul_impl(&b.inv().expect("division by zero scalar")));

/// A denominator prints bare only when it is a single variable power.
fn bare_denominator(p: &Poly) -> bool {
    match p.terms().as_slice() {
        [(i, j, c)] => c.is_one() && ((*i == 0) != (*j == 0)),
        _ => false,
    }
}

impl fmt::Display for Scalar {
    /// Prints in the expression grammar, e.g. `3/2`, `p*q - 1`, `(p)/(q - 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if let Some((n, d)) = self.as_rational() {
            return write!(f, "{n}/{d}");
        }
        let num = if self.num.term_count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = if bare_denominator(&self.den) {
            self.den.to_string()
        } else {
            format!("({})", self.den)
        };
        write!(f, "{num}/{den}")
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}
