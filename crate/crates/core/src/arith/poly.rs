use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Zero};

use super::{Field, Ring};
use crate::error::{Error, Result};

static KARATSUBA_THRESHOLD: AtomicUsize = AtomicUsize::new(64);

/// Operand length above which dense products switch to Karatsuba.
pub fn karatsuba_threshold() -> usize {
    KARATSUBA_THRESHOLD.load(Ordering::Relaxed)
}

/// Sets the Karatsuba switch-over length (clamped to at least 2).
pub fn set_karatsuba_threshold(t: usize) {
    KARATSUBA_THRESHOLD.store(t.max(2), Ordering::Relaxed);
}

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `q^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| C::from_i64(c)).collect())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^deg`
    pub fn monomial(c: C, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); deg + 1];
        v[deg] = c;
        Poly { coeffs: v }
    }

    pub fn x_pow(deg: usize) -> Self {
        Self::monomial(C::one(), deg)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `q^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Number of leading zero coefficients (the `q`-adic valuation).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![C::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    /// Divides by `q^k`, discarding nothing; caller guarantees `k <= low_order()`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(k <= self.low_order() || self.is_zero());
        if self.is_zero() {
            return self.clone();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x);
            acc.add_ref(c);
        }
        acc
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.add_ref(b);
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, rhs: &Self) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), C::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            a.sub_ref(b);
        }
        self.trim();
    }

    /// `self += q^k * rhs` (or `-=` when `negate`)
    pub fn add_shifted(&mut self, rhs: &Self, k: usize, negate: bool) {
        if rhs.is_zero() {
            return;
        }
        let need = rhs.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, C::zero());
        }
        for (i, b) in rhs.coeffs.iter().enumerate() {
            if negate {
                self.coeffs[i + k].sub_ref(b);
            } else {
                self.coeffs[i + k].add_ref(b);
            }
        }
        self.trim();
    }

    /// `self += c * q^k * rhs`
    pub fn add_scaled_shifted(&mut self, rhs: &Self, c: &C, k: usize) {
        if rhs.is_zero() || c.is_zero() {
            return;
        }
        let need = rhs.coeffs.len() + k;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, C::zero());
        }
        for (i, b) in rhs.coeffs.iter().enumerate() {
            if !b.is_zero() {
                self.coeffs[i + k].mul_add(b, c);
            }
        }
        self.trim();
    }

    pub fn mul_ref_poly(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Poly::new(mul_slices(&self.coeffs, &rhs.coeffs))
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow_u32(self, e)
    }

    /// Division by a divisor whose leading coefficient is one; works over any ring.
    pub fn divrem_monic(&self, g: &Self) -> Result<(Self, Self)> {
        let lead = g.leading().ok_or(Error::ZeroDivisor)?;
        if !lead.is_one() {
            return Err(Error::Unsupported("divisor is not monic".into()));
        }
        let dg = g.coeffs.len() - 1;
        if self.coeffs.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let nz: Vec<(usize, &C)> = g.coeffs[..dg].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![C::zero(); rem.len() - dg];
        for i in (0..quo.len()).rev() {
            let c = std::mem::replace(&mut rem[i + dg], C::zero());
            if c.is_zero() {
                continue;
            }
            for &(j, gj) in &nz {
                let p = c.mul_ref(gj);
                rem[i + j].sub_ref(&p);
            }
            quo[i] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, g: &Self) -> Result<Self> {
        self.divrem_monic(g).map(|(_, r)| r)
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, g: &Self) -> Option<Self> {
        match self.divrem_monic(g) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Largest `v` with `g^v | self`, capped at `cap`; zero polynomials report `cap`.
    pub fn valuation_monic(&self, g: &Self, cap: u32) -> u32 {
        let mut cur = self.clone();
        let mut v = 0;
        while v < cap {
            if cur.is_zero() {
                return cap;
            }
            match cur.div_exact_monic(g) {
                Some(q) => {
                    cur = q;
                    v += 1;
                }
                None => break,
            }
        }
        v
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<C: Field> Poly<C> {
    /// Euclidean division: `self = g * quotient + remainder`, `deg(remainder) < deg(g)`.
    pub fn divrem(&self, g: &Self) -> Result<(Self, Self)> {
        let lead = g.leading().ok_or(Error::ZeroDivisor)?;
        if lead.is_one() {
            return self.divrem_monic(g);
        }
        let inv = lead.inv().ok_or(Error::ZeroDivisor)?;
        let monic = g.scale(&inv);
        let (q, r) = self.divrem_monic(&monic)?;
        Ok((q.scale(&inv), r))
    }

    pub fn rem(&self, g: &Self) -> Result<Self> {
        self.divrem(g).map(|(_, r)| r)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &q.mul_ref_poly(&s1);
            let t = &t0 - &q.mul_ref_poly(&t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }
}

fn is_dense<C: Ring>(v: &[C]) -> bool {
    let nnz = v.iter().filter(|c| !c.is_zero()).count();
    nnz * 2 >= v.len()
}

pub(crate) fn mul_slices<C: Ring>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let thr = karatsuba_threshold();
    if a.len().min(b.len()) >= thr && is_dense(a) && is_dense(b) {
        let mut out = vec![C::zero(); a.len() + b.len() - 1];
        karatsuba_into(&mut out, a, b, thr);
        out
    } else {
        schoolbook(a, b)
    }
}

fn schoolbook<C: Ring>(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    schoolbook_into(&mut out, a, b);
    out
}

fn schoolbook_into<C: Ring>(out: &mut [C], a: &[C], b: &[C]) {
    let nzb: Vec<(usize, &C)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(j, y) in &nzb {
            out[i + j].mul_add(x, y);
        }
    }
}

/// Accumulates `a * b` into `out` (which must have room for `a.len() + b.len() - 1` terms).
fn karatsuba_into<C: Ring>(out: &mut [C], a: &[C], b: &[C], thr: usize) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() < thr {
        schoolbook_into(out, a, b);
        return;
    }
    if a.len() >= 2 * b.len() {
        // unbalanced: slice the long operand into chunks of the short one's length
        for (ci, chunk) in a.chunks(b.len()).enumerate() {
            let off = ci * b.len();
            karatsuba_into(&mut out[off..], chunk, b, thr);
        }
        return;
    }
    let m = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m.min(b.len()));

    let mut z0 = vec![C::zero(); a0.len() + b0.len() - 1];
    karatsuba_into(&mut z0, a0, b0, thr);
    let z2 = if b1.is_empty() {
        Vec::new()
    } else {
        let mut z = vec![C::zero(); a1.len() + b1.len() - 1];
        karatsuba_into(&mut z, a1, b1, thr);
        z
    };
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let mut z1 = vec![C::zero(); sa.len() + sb.len() - 1];
    karatsuba_into(&mut z1, &sa, &sb, thr);
    for (i, c) in z0.iter().enumerate() {
        z1[i].sub_ref(c);
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i].sub_ref(c);
    }
    for (i, c) in z0.iter().enumerate() {
        out[i].add_ref(c);
    }
    for (i, c) in z1.iter().enumerate() {
        if i + m < out.len() {
            out[i + m].add_ref(c);
        } else {
            debug_assert!(c.is_zero());
        }
    }
    for (i, c) in z2.iter().enumerate() {
        out[i + 2 * m].add_ref(c);
    }
}

fn add_slices<C: Ring>(x: &[C], y: &[C]) -> Vec<C> {
    let (long, short) = if x.len() >= y.len() { (x, y) } else { (y, x) };
    let mut v = long.to_vec();
    for (a, b) in v.iter_mut().zip(short) {
        a.add_ref(b);
    }
    v
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly { coeffs: vec![C::one()] }
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref_poly(&rhs)
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<'a, C: Ring> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut r = self.clone();
        r.add_assign_ref(rhs);
        r
    }
}

impl<'a, C: Ring> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut r = self.clone();
        r.sub_assign_ref(rhs);
        r
    }
}

impl<'a, C: Ring> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.mul_ref_poly(rhs)
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn add_ref(&mut self, rhs: &Self) {
        self.add_assign_ref(rhs);
    }
    fn sub_ref(&mut self, rhs: &Self) {
        self.sub_assign_ref(rhs);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_ref_poly(rhs)
    }
    fn from_int(v: &num_bigint::BigInt) -> Self {
        Self::constant(C::from_int(v))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{i}")?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Int, QPoly, Rat};

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_i64s(cs)
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = qp(&[-1, 0, 1]).divrem(&qp(&[-1, 1])).unwrap();
        assert_eq!(q, qp(&[1, 1]));
        assert!(r.is_zero());

        let (q, r) = qp(&[0, 0, 0, 1]).divrem(&qp(&[1, 0, 1])).unwrap();
        assert_eq!(q, qp(&[0, 1]));
        assert_eq!(r, qp(&[0, -1]));

        let (q, r) = QPoly::zero().divrem(&qp(&[-1, 1])).unwrap();
        assert!(q.is_zero() && r.is_zero());
    }

    #[test]
    fn divrem_by_zero_errors() {
        assert_eq!(qp(&[1, 1]).divrem(&QPoly::zero()), Err(Error::ZeroDivisor));
    }

    #[test]
    fn divrem_non_monic() {
        let f = qp(&[1, 2, 3, 4]);
        let g = qp(&[1, 3]);
        let (q, r) = f.divrem(&g).unwrap();
        assert_eq!(&(&q * &g) + &r, f);
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(qp(&[-1, 0, 1]).gcd(&qp(&[-1, 0, 0, 1])), qp(&[-1, 1]));
        assert_eq!(qp(&[2, 4]).gcd(&QPoly::zero()), qp(&[1, 2]).monic());
        assert!(QPoly::zero().gcd(&QPoly::zero()).is_zero());
        // Phi_3 and Phi_6 are coprime
        assert_eq!(qp(&[1, 1, 1]).gcd(&qp(&[1, -1, 1])), QPoly::one());
    }

    #[test]
    fn ext_gcd_bezout() {
        let f = qp(&[1, -1, 0, 2, 5]);
        let g = qp(&[3, 0, 1]);
        let (d, s, t) = f.ext_gcd(&g);
        assert_eq!(&(&s * &f) + &(&t * &g), d);
        assert_eq!(d, f.gcd(&g));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<Int> = (0..300).map(|i| Int::from((i * 7919) % 113 - 50)).collect();
        let b: Vec<Int> = (0..170).map(|i| Int::from((i * 104729) % 97 - 40)).collect();
        let expected = schoolbook(&a, &b);
        let mut out = vec![Int::zero(); a.len() + b.len() - 1];
        karatsuba_into(&mut out, &a, &b, 8);
        assert_eq!(out, expected);
        let mut out = vec![Int::zero(); a.len() + b.len() - 1];
        karatsuba_into(&mut out, &b, &a, 3);
        assert_eq!(out, expected);
    }

    #[test]
    fn valuation_counts_repeated_factor() {
        let phi3 = qp(&[1, 1, 1]);
        let f = phi3.pow(3).mul_ref_poly(&qp(&[2, 1]));
        assert_eq!(f.valuation_monic(&phi3, 5), 3);
        assert_eq!(f.valuation_monic(&phi3, 2), 2);
    }

    #[test]
    fn eval_horner() {
        let f = qp(&[1, 1, 1]);
        assert_eq!(f.eval(&Rat::from_integer(2.into())), Rat::from_integer(7.into()));
    }
}
