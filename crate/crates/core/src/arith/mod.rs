//! Exact scalar and polynomial arithmetic.
//!
//! Everything here is generic over a coefficient [`Ring`]. The concrete
//! instantiations used by the engine (`Int`, `Rat`, and the quotient-ring
//! [`Residue`]) are aliased at the crate root.

mod frac;
mod laurent;
mod poly;
mod residue;

pub use frac::{a_term, coeffs_in_a, subst_a_poly, Frac};
pub use laurent::Laurent;
pub use poly::{karatsuba_threshold, set_karatsuba_threshold, Poly};
pub use residue::Residue;

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic.
///
/// The by-reference methods exist so that generic polynomial code can avoid
/// cloning big-integer coefficients in inner loops.
pub trait Ring:
    Clone + PartialEq + Debug + Send + Sync + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
    fn add_ref(&mut self, rhs: &Self);
    fn sub_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;

    /// Image of an integer under the canonical map `Z -> Self`.
    fn from_int(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_int(&BigInt::from(v))
    }

    /// `self += a * b`
    fn mul_add(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_ref(&p);
    }

    fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul_ref(&r))
    }
}

macro_rules! big_ring {
    ($t:ty, $from:expr) => {
        impl Ring for $t {
            #[inline]
            fn add_ref(&mut self, rhs: &Self) {
                *self += rhs;
            }
            #[inline]
            fn sub_ref(&mut self, rhs: &Self) {
                *self -= rhs;
            }
            #[inline]
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn from_int(v: &BigInt) -> Self {
                $from(v)
            }
            #[inline]
            fn mul_add(&mut self, a: &Self, b: &Self) {
                *self += a * b;
            }
        }
    };
}

big_ring!(BigInt, |v: &BigInt| v.clone());
big_ring!(BigRational, |v: &BigInt| BigRational::from_integer(v.clone()));

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Converts an integer polynomial to one over the rationals.
pub fn to_rat_poly(p: &Poly<BigInt>) -> Poly<BigRational> {
    p.map(|c| BigRational::from_integer(c.clone()))
}

/// Clears denominators: returns `(L, L*p)` with `L` the lcm of the coefficient denominators.
pub fn to_int_poly(p: &Poly<BigRational>) -> (BigInt, Poly<BigInt>) {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    let scaled = p.map(|c| (c * BigRational::from_integer(l.clone())).to_integer());
    (l, scaled)
}
