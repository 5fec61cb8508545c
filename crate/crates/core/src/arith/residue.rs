use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{to_int_poly, to_rat_poly, Poly, Ring};
use crate::error::{Error, Result};
use crate::{QPoly, Rat, ZPoly};

/// An element of the quotient ring `Q[q] / (M)` for a monic integer modulus `M`,
/// stored as an integer polynomial over a positive common denominator.
///
/// Constants built through `Zero`, `One` or `from_int` carry no modulus and
/// adopt the modulus of whatever they are combined with, so the type can
/// serve as a coefficient ring for generic polynomial code.
#[derive(Clone)]
pub struct Residue {
    num: ZPoly,
    den: BigInt,
    modulus: Option<Arc<ZPoly>>,
}

impl Residue {
    /// Reduces `value` modulo `modulus` (which must be monic).
    pub fn new(value: &QPoly, modulus: &Arc<ZPoly>) -> Result<Self> {
        let (den, num) = to_int_poly(value);
        Ok(Residue { num: num.rem_monic(modulus)?, den, modulus: Some(modulus.clone()) })
    }

    pub fn from_int_poly(value: &ZPoly, modulus: &Arc<ZPoly>) -> Result<Self> {
        Ok(Residue { num: value.rem_monic(modulus)?, den: BigInt::one(), modulus: Some(modulus.clone()) })
    }

    /// The canonical representative, of degree below that of the modulus.
    pub fn value(&self) -> QPoly {
        if self.den.is_one() {
            return to_rat_poly(&self.num);
        }
        self.num.map(|c| Rat::new(c.clone(), self.den.clone()))
    }

    /// `value()` times the positive integer `den()`.
    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn modulus(&self) -> Option<&Arc<ZPoly>> {
        self.modulus.as_ref()
    }

    /// Multiplicative inverse via extended Euclid over the rationals.
    pub fn inv(&self) -> Result<Self> {
        let m = self.modulus.as_ref().ok_or(Error::Unsupported("inverse without modulus".into()))?;
        let (g, s, _) = self.value().ext_gcd(&to_rat_poly(m));
        if g.degree() != Some(0) {
            return Err(Error::NotInvertible);
        }
        Residue::new(&s, m)
    }

    fn join(&self, rhs: &Self) -> Option<Arc<ZPoly>> {
        match (&self.modulus, &rhs.modulus) {
            (Some(a), Some(b)) => {
                debug_assert!(Arc::ptr_eq(a, b) || a == b, "mixed moduli");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn reduce(num: ZPoly, den: BigInt, modulus: Option<Arc<ZPoly>>) -> Self {
        let num = match &modulus {
            Some(m) => num.rem_monic(m).expect("monic modulus"),
            None => num,
        };
        let mut r = Residue { num, den, modulus };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.den.is_one() {
            return;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in self.num.coeffs() {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.num = self.num.map(|c| c / &g);
            self.den = &self.den / &g;
        }
    }

    fn combine(&mut self, rhs: &Self, negate: bool) {
        if self.den == rhs.den {
            if negate {
                self.num.sub_assign_ref(&rhs.num);
            } else {
                self.num.add_assign_ref(&rhs.num);
            }
        } else {
            let mut other = rhs.num.scale(&self.den);
            if negate {
                other = -other;
            }
            self.num = self.num.scale(&rhs.den);
            self.num.add_assign_ref(&other);
            self.den = &self.den * &rhs.den;
        }
        let modulus = if self.modulus.is_none() { rhs.modulus.clone() } else { self.modulus.clone() };
        let needs_reduce = self.modulus.is_none() && modulus.is_some();
        if needs_reduce {
            *self = Residue::reduce(std::mem::take(&mut self.num), self.den.clone(), modulus);
        } else {
            self.normalize();
        }
    }
}

impl PartialEq for Residue {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.scale(&other.den) == other.num.scale(&self.den)
    }
}

impl Zero for Residue {
    fn zero() -> Self {
        Residue { num: Poly::zero(), den: BigInt::one(), modulus: None }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Residue {
    fn one() -> Self {
        Residue { num: Poly::one(), den: BigInt::one(), modulus: None }
    }
}

impl Add for Residue {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_ref(&rhs);
        self
    }
}

impl Sub for Residue {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_ref(&rhs);
        self
    }
}

impl Mul for Residue {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl Neg for Residue {
    type Output = Self;
    fn neg(self) -> Self {
        Residue { num: -self.num, den: self.den, modulus: self.modulus }
    }
}

impl Ring for Residue {
    fn add_ref(&mut self, rhs: &Self) {
        self.combine(rhs, false);
    }
    fn sub_ref(&mut self, rhs: &Self) {
        self.combine(rhs, true);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let den = if rhs.den.is_one() { self.den.clone() } else { &self.den * &rhs.den };
        Residue::reduce(self.num.mul_ref_poly(&rhs.num), den, self.join(rhs))
    }
    fn from_int(v: &BigInt) -> Self {
        Residue { num: Poly::constant(v.clone()), den: BigInt::one(), modulus: None }
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}]", self.value())
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn phi3() -> Arc<ZPoly> {
        Arc::new(ZPoly::from_i64s(&[1, 1, 1]))
    }

    #[test]
    fn q_cubed_is_one() {
        let m = phi3();
        let q = Residue::new(&QPoly::from_i64s(&[0, 1]), &m).unwrap();
        let q3 = q.pow_u32(3);
        assert_eq!(q3, Residue::one());
    }

    #[test]
    fn inverse_of_q() {
        let m = phi3();
        let q = Residue::new(&QPoly::from_i64s(&[0, 1]), &m).unwrap();
        // q^2 reduces to -1 - q
        assert_eq!(q.inv().unwrap().value(), QPoly::from_i64s(&[-1, -1]));
    }

    #[test]
    fn non_unit_has_no_inverse() {
        let m = Arc::new(ZPoly::from_i64s(&[1, 1, 1]).pow(2));
        let x = Residue::new(&QPoly::from_i64s(&[1, 1, 1]), &m).unwrap();
        assert_eq!(x.inv().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn constants_adopt_modulus() {
        let m = phi3();
        let q = Residue::new(&QPoly::from_i64s(&[0, 0, 1]), &m).unwrap();
        let mut s = Residue::one();
        s.add_ref(&q);
        // 1 + q^2 = -q mod q^2+q+1
        assert_eq!(s.value(), QPoly::from_i64s(&[0, -1]));
    }

    #[test]
    fn rational_values_round_trip() {
        let m = phi3();
        let half = Residue::new(&QPoly::constant(Rat::new(1.into(), 2.into())), &m).unwrap();
        let two = Residue::new(&QPoly::from_i64s(&[2]), &m).unwrap();
        assert_eq!(half.mul_ref(&two), Residue::one());
        let mut x = half.clone();
        x.add_ref(&half);
        assert_eq!(x.den(), &BigInt::one());
        assert!(!x.numer().coeffs()[0].is_negative());
    }
}
