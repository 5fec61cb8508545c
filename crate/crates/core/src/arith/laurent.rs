use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Poly, Ring};

/// `q^shift * body` with `body(0) != 0` (or the zero value with shift 0).
///
/// Nesting gives multivariate Laurent polynomials: `Laurent<Laurent<Rat>>`
/// is a Laurent polynomial in an outer variable whose coefficients are
/// Laurent polynomials in `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent<C> {
    shift: i64,
    body: Poly<C>,
}

impl<C: Ring> Laurent<C> {
    pub fn new(shift: i64, body: Poly<C>) -> Self {
        let mut l = Laurent { shift, body };
        l.canonicalize();
        l
    }

    pub fn from_poly(body: Poly<C>) -> Self {
        Self::new(0, body)
    }

    /// `c * x^e`
    pub fn monomial(c: C, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { shift: e, body: Poly::constant(c) }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn body(&self) -> &Poly<C> {
        &self.body
    }

    pub fn into_parts(self) -> (i64, Poly<C>) {
        (self.shift, self.body)
    }

    /// Lowest exponent present.
    pub fn min_exp(&self) -> i64 {
        self.shift
    }

    /// Highest exponent present, or `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        self.body.degree().map(|d| self.shift + d as i64)
    }

    /// Coefficient of `x^e`.
    pub fn coeff(&self, e: i64) -> C {
        if e < self.shift {
            return C::zero();
        }
        self.body.coeff((e - self.shift) as usize)
    }

    /// Iterates over `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let s = self.shift;
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (s + i as i64, c))
    }

    /// Multiplies by `x^k`.
    pub fn mul_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { shift: self.shift + k, body: self.body.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.shift, self.body.scale(c))
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::new(self.shift, self.body.map(f))
    }

    /// `x^(-min_exp) * self`, i.e. the polynomial part after clearing the shift.
    pub fn to_poly_shifted(&self) -> Poly<C> {
        self.body.clone()
    }

    /// Converts to a plain polynomial if no negative exponents occur.
    pub fn to_poly(&self) -> Option<Poly<C>> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        (self.shift >= 0).then(|| self.body.shift_up(self.shift as usize))
    }

    fn canonicalize(&mut self) {
        if self.body.is_zero() {
            self.shift = 0;
            return;
        }
        let low = self.body.low_order();
        if low > 0 {
            self.body = self.body.shift_down(low);
            self.shift += low as i64;
        }
    }

    fn combine(&self, rhs: &Self, sub: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sub { -rhs.clone() } else { rhs.clone() };
        }
        let s = self.shift.min(rhs.shift);
        let mut a = self.body.shift_up((self.shift - s) as usize);
        let b = rhs.body.shift_up((rhs.shift - s) as usize);
        if sub {
            a.sub_assign_ref(&b);
        } else {
            a.add_assign_ref(&b);
        }
        Self::new(s, a)
    }
}

impl<C: Ring> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent { shift: 0, body: Poly::zero() }
    }
    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

impl<C: Ring> One for Laurent<C> {
    fn one() -> Self {
        Laurent { shift: 0, body: Poly::one() }
    }
}

impl<C: Ring> Add for Laurent<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, false)
    }
}

impl<C: Ring> Sub for Laurent<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, true)
    }
}

impl<C: Ring> Mul for Laurent<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<C: Ring> Neg for Laurent<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent { shift: self.shift, body: -self.body }
    }
}

impl<'a, C: Ring> Add<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        self.combine(rhs, false)
    }
}

impl<'a, C: Ring> Sub<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        self.combine(rhs, true)
    }
}

impl<'a, C: Ring> Mul<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Ring> Ring for Laurent<C> {
    fn add_ref(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        if !self.is_zero() && self.shift <= rhs.shift {
            self.body.add_shifted(&rhs.body, (rhs.shift - self.shift) as usize, false);
            self.canonicalize();
        } else {
            *self = self.combine(rhs, false);
        }
    }
    fn sub_ref(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        if !self.is_zero() && self.shift <= rhs.shift {
            self.body.add_shifted(&rhs.body, (rhs.shift - self.shift) as usize, true);
            self.canonicalize();
        } else {
            *self = self.combine(rhs, true);
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // product of polynomials with nonzero constant terms keeps a nonzero constant term
        // over an integral domain; canonicalize anyway for quotient-ring coefficients.
        Self::new(self.shift + rhs.shift, self.body.mul_ref_poly(&rhs.body))
    }
    fn from_int(v: &BigInt) -> Self {
        Self::constant(C::from_int(v))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*q^{e}")?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{} * {:?}", self.shift, self.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QLaurent, QPoly};

    fn ql(shift: i64, cs: &[i64]) -> QLaurent {
        QLaurent::new(shift, QPoly::from_i64s(cs))
    }

    #[test]
    fn mul_adds_shifts() {
        let x = ql(-1, &[1]);
        let y = ql(1, &[1]);
        let p = x.mul_ref(&y);
        assert_eq!(p, QLaurent::one());
        assert_eq!(p.shift(), 0);
    }

    #[test]
    fn add_aligns_shifts() {
        let s = ql(-1, &[1]) + ql(1, &[1]);
        assert_eq!(s, ql(-1, &[1, 0, 1]));
        assert_eq!(s.shift(), -1);
    }

    #[test]
    fn zero_is_additive_identity() {
        let f = ql(-3, &[2, 0, 5]);
        assert_eq!(QLaurent::zero() + f.clone(), f);
        assert_eq!(f.shift(), -3);
    }

    #[test]
    fn constructor_canonicalizes() {
        let f = QLaurent::new(2, QPoly::from_i64s(&[0, 0, 3]));
        assert_eq!(f.shift(), 4);
        assert_eq!(f.body(), &QPoly::from_i64s(&[3]));
        let z = QLaurent::new(5, QPoly::zero());
        assert_eq!(z.shift(), 0);
    }

    #[test]
    fn cancellation_renormalizes() {
        let a = ql(0, &[1, 1]);
        let b = ql(0, &[1]);
        let d = a - b;
        assert_eq!(d, ql(1, &[1]));
        assert_eq!(d.shift(), 1);
    }
}
