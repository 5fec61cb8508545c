use std::sync::Arc;

use num_traits::{One, Zero};

use super::cyclotomic_z;
use crate::arith::{to_int_poly, Laurent, Residue, Ring};
use crate::error::{Error, Result};
use crate::{QLaurent, QPoly, Rat, ZLaurent, ZPoly};

/// Integer Laurent polynomials in `b` (outer), `a`, `q` (inner).
pub type Tri = Laurent<Laurent<ZLaurent>>;

/// A target ring into which factored expressions are expanded.
pub trait Evaluator {
    type T: Ring;

    /// `c * a^a * b^b * q^q`
    fn mono(&self, c: &Rat, a: i64, b: i64, q: i64) -> Result<Self::T>;

    fn invert(&self, x: &Self::T) -> Result<Self::T>;

    fn cyclo(&self, d: u64) -> Result<Self::T> {
        let p = cyclotomic_z(d);
        let mut acc = Self::T::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc.add_ref(&self.mono(&Rat::from_integer(c.clone()), 0, 0, i as i64)?);
            }
        }
        Ok(acc)
    }
}

/// Exact expansion over the integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactEval;

impl Evaluator for ExactEval {
    type T = Tri;

    fn mono(&self, c: &Rat, a: i64, b: i64, q: i64) -> Result<Tri> {
        if !c.is_integer() {
            return Err(Error::Unsupported("non-integral coefficient in exact expansion".into()));
        }
        let inner = ZLaurent::monomial(c.to_integer(), q);
        Ok(Laurent::monomial(Laurent::monomial(inner, a), b))
    }

    fn invert(&self, _x: &Tri) -> Result<Tri> {
        Err(Error::Unsupported("division in exact expansion".into()))
    }
}

/// Expansion into `(Q[q]/M)[a, 1/a]`.
#[derive(Clone, Debug)]
pub struct ModEval {
    modulus: Arc<ZPoly>,
    q: Residue,
    q_inv: Residue,
}

impl ModEval {
    /// `modulus` must be a monic integer polynomial (up to a constant factor)
    /// with nonzero constant term.
    pub fn new(modulus: QPoly) -> Result<Self> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::Invalid("modulus must be nonconstant".into()));
        }
        let (_, m) = to_int_poly(&modulus.monic());
        if !m.leading().is_some_and(|c| c.is_one()) {
            return Err(Error::Unsupported("modulus is not integral after scaling".into()));
        }
        Self::from_int(m)
    }

    pub fn from_int(modulus: ZPoly) -> Result<Self> {
        let modulus = Arc::new(modulus);
        let q = Residue::from_int_poly(&ZPoly::x_pow(1), &modulus)?;
        let q_inv = q.inv().map_err(|_| Error::QNotInvertible)?;
        Ok(ModEval { modulus, q, q_inv })
    }

    pub fn modulus(&self) -> &Arc<ZPoly> {
        &self.modulus
    }

    pub fn q_power(&self, e: i64) -> Residue {
        let base = if e >= 0 { &self.q } else { &self.q_inv };
        let r = base.pow_u32(e.unsigned_abs() as u32);
        if r.modulus().is_none() {
            // q^0: attach the modulus
            return Residue::from_int_poly(r.numer(), &self.modulus).expect("monic modulus");
        }
        r
    }

    /// Canonical representative of a Laurent polynomial in the quotient ring.
    pub fn reduce(&self, f: &QLaurent) -> Residue {
        let body = Residue::new(f.body(), &self.modulus).expect("monic modulus");
        body.mul_ref(&self.q_power(f.shift()))
    }

    pub fn reduce_int(&self, f: &ZLaurent) -> Residue {
        let body = Residue::from_int_poly(f.body(), &self.modulus).expect("monic modulus");
        body.mul_ref(&self.q_power(f.shift()))
    }

    pub fn residue(&self, p: &QPoly) -> Residue {
        Residue::new(p, &self.modulus).expect("monic modulus")
    }
}

impl Evaluator for ModEval {
    type T = Laurent<Residue>;

    fn mono(&self, c: &Rat, a: i64, b: i64, q: i64) -> Result<Self::T> {
        if b != 0 {
            return Err(Error::Unsupported("second parameter in modular expansion".into()));
        }
        let mut r = self.q_power(q);
        if !c.is_one() {
            r = r.mul_ref(&Residue::new(&QPoly::constant(c.clone()), &self.modulus)?);
        }
        Ok(Laurent::monomial(r, a))
    }

    fn invert(&self, x: &Self::T) -> Result<Self::T> {
        if x.body().len() != 1 {
            return Err(Error::Unsupported("inverting a non-constant in a".into()));
        }
        let c = x.body().coeff(0).inv()?;
        Ok(Laurent::monomial(c, -x.shift()))
    }
}

/// The `b^0 a^i` coefficient of an exact expansion, as a Laurent polynomial in `q`.
pub fn tri_coeff(t: &Tri, a: i64) -> ZLaurent {
    t.coeff(0).coeff(a)
}

/// Expansion into Laurent polynomials in `a` and `q` over the rationals.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatEval;

impl Evaluator for RatEval {
    type T = crate::BiPoly;

    fn mono(&self, c: &Rat, a: i64, b: i64, q: i64) -> Result<Self::T> {
        if b != 0 {
            return Err(Error::Unsupported("second parameter in rational expansion".into()));
        }
        Ok(Laurent::monomial(QLaurent::monomial(c.clone(), q), a))
    }

    fn invert(&self, _x: &Self::T) -> Result<Self::T> {
        Err(Error::Unsupported("division in polynomial expansion".into()))
    }
}
