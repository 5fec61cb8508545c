use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Laurent, Poly, Ring};
use crate::error::{Error, Result};
use crate::{BiPoly, QLaurent, QPoly, Rat};

/// A fraction `num / den` over a ring, kept unreduced.
///
/// Equality is cross-multiplication equality, so two fractions compare
/// equal whenever they represent the same element of the fraction field.
#[derive(Clone)]
pub struct Frac<T> {
    num: T,
    den: T,
}

impl<T: Ring> Frac<T> {
    pub fn new(num: T, den: T) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Frac { num, den })
    }

    pub fn from_num(num: T) -> Self {
        Frac { num, den: T::one() }
    }

    pub fn num(&self) -> &T {
        &self.num
    }

    pub fn den(&self) -> &T {
        &self.den
    }

    pub fn into_parts(self) -> (T, T) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Frac { num: self.num.pow_u32(e), den: self.den.pow_u32(e) }
    }

    fn combine(&self, rhs: &Self, sub: bool) -> Self {
        if self.den == rhs.den {
            let mut num = self.num.clone();
            if sub {
                num.sub_ref(&rhs.num);
            } else {
                num.add_ref(&rhs.num);
            }
            return Frac { num, den: self.den.clone() };
        }
        let mut num = self.num.mul_ref(&rhs.den);
        let other = rhs.num.mul_ref(&self.den);
        if sub {
            num.sub_ref(&other);
        } else {
            num.add_ref(&other);
        }
        Frac { num, den: self.den.mul_ref(&rhs.den) }
    }
}

impl<T: Ring> PartialEq for Frac<T> {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul_ref(&other.den) == other.num.mul_ref(&self.den)
    }
}

impl<T: Ring> Zero for Frac<T> {
    fn zero() -> Self {
        Frac::from_num(T::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Ring> One for Frac<T> {
    fn one() -> Self {
        Frac::from_num(T::one())
    }
}

impl<T: Ring> Add for Frac<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, false)
    }
}

impl<T: Ring> Sub for Frac<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, true)
    }
}

impl<T: Ring> Mul for Frac<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Frac { num: self.num.mul_ref(&rhs.num), den: self.den.mul_ref(&rhs.den) }
    }
}

impl<T: Ring> Neg for Frac<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Frac { num: -self.num, den: self.den }
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Frac<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<T: fmt::Debug> fmt::Debug for Frac<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac({:?} / {:?})", self.num, self.den)
    }
}

fn q_minus_one() -> QPoly {
    Poly::from_i64s(&[-1, 1])
}

/// Multiplicity of `q - 1` in `p` together with the cofactor.
fn split_q1(p: &QPoly) -> (u32, QPoly) {
    let g = q_minus_one();
    let mut cur = p.clone();
    let mut m = 0;
    while !cur.is_zero() {
        match cur.div_exact_monic(&g) {
            Some(next) => {
                cur = next;
                m += 1;
            }
            None => break,
        }
    }
    (m, cur)
}

impl Frac<QLaurent> {
    /// `lim_{q -> 1}` of the fraction.
    pub fn eval_limit_q1(&self) -> Result<Rat> {
        if self.num.is_zero() {
            return Ok(Rat::zero());
        }
        let (mn, pn) = split_q1(self.num.body());
        let (md, pd) = split_q1(self.den.body());
        if mn < md {
            return Err(Error::PoleAtOne);
        }
        if mn > md {
            return Ok(Rat::zero());
        }
        let one = Rat::one();
        Ok(pn.eval(&one) / pd.eval(&one))
    }
}

/// Image of a polynomial in `a` under `a := q^e`.
pub fn subst_a_poly(x: &BiPoly, e: i64) -> QLaurent {
    let mut acc = QLaurent::zero();
    for (i, c) in x.terms() {
        acc.add_ref(&c.mul_pow(i * e));
    }
    acc
}

impl Frac<BiPoly> {
    /// Substitutes `a := q^e`.
    pub fn subst_a(&self, e: i64) -> Result<Frac<QLaurent>> {
        let den = subst_a_poly(&self.den, e);
        if den.is_zero() {
            return Err(Error::VanishingDenominator);
        }
        Ok(Frac { num: subst_a_poly(&self.num, e), den })
    }
}

/// The `a`-coefficients of `x` in ascending order, with the exponent of the first one.
pub fn coeffs_in_a(x: &BiPoly) -> (Vec<QLaurent>, i64) {
    let (shift, body) = x.clone().into_parts();
    (body.into_coeffs(), shift)
}

/// The element `a^i * c` of the bivariate ring.
pub fn a_term(c: QLaurent, i: i64) -> BiPoly {
    Laurent::monomial(c, i)
}
