use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::eval::Evaluator;
use super::{divisors, totient};
use crate::arith::Ring;
use crate::error::{Error, Result};
use crate::Rat;

/// Symbolic parameters besides `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A,
    B,
}

/// An irreducible-enough building block of q-shifted factorials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// `Phi_d(q)`; `Phi_1 = q - 1`.
    Cyclo(u64),
    /// `1 - X` (or `1 + X` when `plus`) with `X = a^a b^b q^q`, `(a, b) != (0, 0)`
    /// and the first nonzero of `(a, b)` positive.
    Lin { plus: bool, a: i64, b: i64, q: i64 },
}

impl Factor {
    fn q_degree(&self) -> i64 {
        match *self {
            Factor::Cyclo(d) => totient(d) as i64,
            Factor::Lin { q, .. } => q.abs(),
        }
    }

    fn mentions(&self, v: Var) -> bool {
        match (*self, v) {
            (Factor::Lin { a, .. }, Var::A) => a != 0,
            (Factor::Lin { b, .. }, Var::B) => b != 0,
            _ => false,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::Cyclo(d) => write!(f, "Phi_{d}"),
            Factor::Lin { plus, a, b, q } => {
                write!(f, "(1{}", if plus { "+" } else { "-" })?;
                let mut parts = Vec::new();
                for (name, e) in [("a", a), ("b", b), ("q", q)] {
                    match e {
                        0 => {}
                        1 => parts.push(name.to_string()),
                        _ => parts.push(format!("{name}^{e}")),
                    }
                }
                write!(f, "{})", parts.join("*"))
            }
        }
    }
}

/// `coeff * a^a * b^b * q^q * prod(factor^exponent)` with integer exponents.
///
/// Every term of the catalog is a product of this shape: q-shifted
/// factorials in `q` alone split into cyclotomic polynomials, and those
/// involving `a` or `b` into linear binomials. Products and quotients are
/// exponent arithmetic, so cancellation is exact and free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    coeff: Rat,
    a: i64,
    b: i64,
    q: i64,
    factors: BTreeMap<Factor, i64>,
}

impl Factored {
    pub fn zero() -> Self {
        Factored { coeff: Rat::zero(), a: 0, b: 0, q: 0, factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Factored { coeff: c, a: 0, b: 0, q: 0, factors: BTreeMap::new() }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    /// `c * a^a * b^b * q^q`
    pub fn mono(c: i64, a: i64, b: i64, q: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Factored { coeff: Rat::from_integer(c.into()), a, b, q, factors: BTreeMap::new() }
    }

    pub fn q_pow(e: i64) -> Self {
        Self::mono(1, 0, 0, e)
    }

    pub fn factor(f: Factor) -> Self {
        let mut x = Self::one();
        x.factors.insert(f, 1);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    /// Exponents of `a`, `b`, `q` in the monomial prefactor.
    pub fn mono_exps(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.q)
    }

    pub fn factors(&self) -> &BTreeMap<Factor, i64> {
        &self.factors
    }

    pub fn exponent(&self, f: &Factor) -> i64 {
        self.factors.get(f).copied().unwrap_or(0)
    }

    pub fn mentions(&self, v: Var) -> bool {
        let e = match v {
            Var::A => self.a,
            Var::B => self.b,
        };
        e != 0 || self.factors.keys().any(|f| f.mentions(v))
    }

    /// `1 - c * a^a * b^b * q^q` for `c = +-1`.
    pub fn one_minus(c: i64, a: i64, b: i64, q: i64) -> Self {
        debug_assert!(c == 1 || c == -1);
        if a == 0 && b == 0 {
            return Self::one_minus_q(c, q);
        }
        let first = if a != 0 { a } else { b };
        if first < 0 {
            // 1 - cX = -cX (1 - cX^-1)
            return Self::mono(-c, a, b, q).mul(&Self::factor(Factor::Lin { plus: c == -1, a: -a, b: -b, q: -q }));
        }
        Self::factor(Factor::Lin { plus: c == -1, a, b, q })
    }

    fn one_minus_q(c: i64, s: i64) -> Self {
        if s == 0 {
            return if c == 1 { Self::zero() } else { Self::int(2) };
        }
        if s < 0 {
            return Self::mono(-c, 0, 0, s).mul(&Self::one_minus_q(c, -s));
        }
        let s = s as u64;
        let mut x = Self::one();
        if c == 1 {
            x.coeff = -x.coeff;
            for d in divisors(s) {
                x.factors.insert(Factor::Cyclo(d), 1);
            }
        } else {
            for d in divisors(2 * s) {
                if s % d != 0 {
                    x.factors.insert(Factor::Cyclo(d), 1);
                }
            }
        }
        x
    }

    /// `[m] = (1 - q^m) / (1 - q)` for any integer `m`.
    pub fn q_int(m: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        Self::one_minus_q(1, m).div(&Self::one_minus_q(1, 1)).expect("1 - q is nonzero")
    }

    /// `(c a^a b^b q^q; q^step)_k`
    pub fn poch(c: i64, a: i64, b: i64, q: i64, step: i64, k: i64) -> Self {
        let mut x = Self::one();
        for j in 0..k.max(0) {
            x = x.mul(&Self::one_minus(c, a, b, q + j * step));
            if x.is_zero() {
                break;
            }
        }
        x
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff *= &rhs.coeff;
        out.a += rhs.a;
        out.b += rhs.b;
        out.q += rhs.q;
        for (f, e) in &rhs.factors {
            let slot = out.factors.entry(*f).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.factors.remove(f);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.coeff *= c;
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Factored {
            coeff: self.coeff.recip(),
            a: -self.a,
            b: -self.b,
            q: -self.q,
            factors: self.factors.iter().map(|(f, e)| (*f, -e)).collect(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if self.is_zero() {
            return Ok(if e == 0 { Self::one() } else { Self::zero() });
        }
        Ok(Factored {
            coeff: num_traits::pow(self.coeff.clone(), e as usize),
            a: self.a * e,
            b: self.b * e,
            q: self.q * e,
            factors: self.factors.iter().map(|(f, x)| (*f, x * e)).collect(),
        })
    }

    /// Substitutes `v := c * q^e` with `c = +-1`.
    pub fn subst(&self, v: Var, c: i64, e: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let sign_pow = |x: i64| if c == -1 && x.rem_euclid(2) == 1 { -1 } else { 1 };
        let mut out = self.clone();
        out.factors.clear();
        match v {
            Var::A => {
                out.coeff *= Rat::from_integer(sign_pow(self.a).into());
                out.q += e * self.a;
                out.a = 0;
            }
            Var::B => {
                out.coeff *= Rat::from_integer(sign_pow(self.b).into());
                out.q += e * self.b;
                out.b = 0;
            }
        }
        for (f, &m) in &self.factors {
            let g = match *f {
                Factor::Lin { plus, a, b, q } if f.mentions(v) => {
                    let c0 = if plus { -1 } else { 1 };
                    match v {
                        Var::A => Self::one_minus(c0 * sign_pow(a), 0, b, q + e * a),
                        Var::B => Self::one_minus(c0 * sign_pow(b), a, 0, q + e * b),
                    }
                }
                _ => Self::factor(*f),
            };
            if g.is_zero() {
                if m > 0 {
                    return Ok(Self::zero());
                }
                return Err(Error::VanishingDenominator);
            }
            out = out.mul(&g.pow(m)?);
        }
        Ok(out)
    }

    /// Splits into `(numerator, denominator)`, both with non-negative
    /// exponents; the denominator carries the positive integer part of the
    /// coefficient denominator and no monomial.
    pub fn split(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(), Self::one());
        }
        let mut num = Factored {
            coeff: Rat::from_integer(self.coeff.numer().clone()),
            a: self.a,
            b: self.b,
            q: self.q,
            factors: BTreeMap::new(),
        };
        let mut den = Self::constant(Rat::from_integer(self.coeff.denom().clone()));
        for (f, &e) in &self.factors {
            if e > 0 {
                num.factors.insert(*f, e);
            } else {
                den.factors.insert(*f, -e);
            }
        }
        (num, den)
    }

    /// The denominator part of [`Factored::split`].
    pub fn den(&self) -> Self {
        self.split().1
    }

    /// Least common multiple of two denominators (as produced by `split`).
    pub fn lcm(&self, other: &Self) -> Self {
        let c = self.coeff.numer().lcm(other.coeff.numer());
        let mut out = Self::constant(Rat::from_integer(c));
        for (f, &e) in self.factors.iter().chain(other.factors.iter()) {
            let slot = out.factors.entry(*f).or_insert(0);
            *slot = (*slot).max(e);
        }
        out
    }

    /// Whether every exponent is non-negative and the coefficient an integer.
    pub fn is_polynomial(&self) -> bool {
        self.coeff.is_integer() && self.factors.values().all(|&e| e >= 0)
    }

    /// Degree in `q` of the factor product (the monomial is ignored).
    pub fn q_degree(&self) -> i64 {
        self.factors.iter().map(|(f, e)| f.q_degree() * e).sum()
    }

    /// Drops all factors for which `keep` is false; the coefficient is kept
    /// only if `keep_coeff`.
    pub fn restrict(&self, keep: impl Fn(&Factor) -> bool, keep_coeff: bool) -> Self {
        let mut out = Self::one();
        if keep_coeff {
            out.coeff = self.coeff.clone();
        }
        for (f, &e) in &self.factors {
            if keep(f) {
                out.factors.insert(*f, e);
            }
        }
        out
    }

    /// Evaluates in the evaluator's ring. Negative exponents are handled by
    /// the evaluator's inverse (which exact evaluators refuse).
    pub fn expand<E: Evaluator>(&self, ev: &E) -> Result<E::T> {
        if self.is_zero() {
            return Ok(E::T::zero());
        }
        let mut pos_cyc: BTreeMap<u64, i64> = BTreeMap::new();
        let mut neg = Self::one();
        let mut lin = Vec::new();
        for (f, &e) in &self.factors {
            if e < 0 {
                neg.factors.insert(*f, -e);
                continue;
            }
            match f {
                Factor::Cyclo(d) => {
                    pos_cyc.insert(*d, e);
                }
                Factor::Lin { .. } => lin.push((*f, e)),
            }
        }
        let c_int = self.coeff.is_integer();
        let lead = if c_int { self.coeff.clone() } else { Rat::from_integer(self.coeff.numer().clone()) };
        let mut acc = ev.mono(&lead, self.a, self.b, self.q)?;
        acc = acc.mul_ref(&expand_cyclo_product(ev, pos_cyc)?);
        for (f, e) in lin {
            let p = expand_factor(ev, &f)?;
            acc = acc.mul_ref(&p.pow_u32(e as u32));
        }
        if !c_int {
            neg.coeff = Rat::from_integer(self.coeff.denom().clone());
        }
        if neg != Self::one() {
            let d = neg.expand(ev)?;
            acc = acc.mul_ref(&ev.invert(&d)?);
        }
        Ok(acc)
    }
}

impl Factored {
    /// As a quotient of Laurent polynomials in `a` and `q`.
    pub fn to_arat(&self) -> Result<crate::ARat> {
        let (num, den) = self.split();
        crate::ARat::new(num.expand(&super::RatEval)?, den.expand(&super::RatEval)?)
    }

    /// As a quotient of Laurent polynomials in `q`; fails if `a` or `b` occur.
    pub fn to_qrat(&self) -> Result<crate::QRat> {
        if self.mentions(Var::A) || self.mentions(Var::B) {
            return Err(Error::Unsupported("parameter in a q-only term".into()));
        }
        let x = self.to_arat()?;
        let (n, d) = x.into_parts();
        crate::QRat::new(n.coeff(0), d.coeff(0))
    }
}

fn expand_factor<E: Evaluator>(ev: &E, f: &Factor) -> Result<E::T> {
    match *f {
        Factor::Cyclo(d) => ev.cyclo(d),
        Factor::Lin { plus, a, b, q } => {
            let c = if plus { 1 } else { -1 };
            let mut one = ev.mono(&Rat::one(), 0, 0, 0)?;
            one.add_ref(&ev.mono(&Rat::from_integer(c.into()), a, b, q)?);
            Ok(one)
        }
    }
}

/// Product of cyclotomic powers, grouping complete divisor sets into sparse
/// binomials `q^s - 1` first.
fn expand_cyclo_product<E: Evaluator>(ev: &E, mut counts: BTreeMap<u64, i64>) -> Result<E::T> {
    let mut acc = ev.mono(&Rat::one(), 0, 0, 0)?;
    let keys: Vec<u64> = counts.keys().rev().copied().collect();
    for s in keys {
        let divs = divisors(s);
        let times = divs.iter().map(|d| counts.get(d).copied().unwrap_or(0)).min().unwrap_or(0);
        if times > 0 && divs.len() > 1 {
            for d in &divs {
                let slot = counts.get_mut(d).expect("present");
                *slot -= times;
            }
            let mut bin = ev.mono(&Rat::one(), 0, 0, s as i64)?;
            bin.sub_ref(&ev.mono(&Rat::one(), 0, 0, 0)?);
            for _ in 0..times {
                acc = acc.mul_ref(&bin);
            }
        }
    }
    for (d, e) in counts {
        if e > 0 {
            let p = ev.cyclo(d)?;
            for _ in 0..e {
                acc = acc.mul_ref(&p);
            }
        }
    }
    Ok(acc)
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (name, e) in [("a", self.a), ("b", self.b), ("q", self.q)] {
            if e != 0 {
                write!(f, "*{name}^{e}")?;
            }
        }
        for (fac, e) in &self.factors {
            write!(f, "*{fac}^{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkit::ExactEval;
    use crate::qkit::{cyclotomic, q_int, q_pochhammer, Monomial};
    use crate::{QLaurent, QPoly};

    fn q_only(t: &crate::qkit::Tri) -> QLaurent {
        let inner = t.coeff(0).coeff(0);
        inner.map(|c| Rat::from_integer(c.clone()))
    }

    #[test]
    fn q_integer_factorization() {
        for m in 1..30 {
            let f = Factored::q_int(m);
            let e = q_only(&f.expand(&ExactEval).unwrap());
            assert_eq!(e, QLaurent::from_poly(q_int(m).unwrap()), "m={m}");
        }
    }

    #[test]
    fn negative_q_integer() {
        // [-2] = -q^-2 [2]
        let f = Factored::q_int(-2);
        let e = q_only(&f.expand(&ExactEval).unwrap());
        assert_eq!(e, QLaurent::new(-2, QPoly::from_i64s(&[-1, -1])));
    }

    #[test]
    fn pochhammer_matches_direct_product() {
        for (c, s, step, k) in [(1, 1, 2, 4), (-1, 1, 2, 3), (1, 2, 2, 5), (1, -3, 1, 3), (-1, 0, 1, 3)] {
            let f = Factored::poch(c, 0, 0, s, step, k);
            let e = q_only(&f.expand(&ExactEval).unwrap());
            let direct = q_pochhammer(&Monomial::new(c, 0, s), step, k as usize);
            assert_eq!(crate::BiPoly::constant(e), direct, "{c} {s} {step} {k}");
        }
    }

    #[test]
    fn cyclotomic_binomial_grouping() {
        let mut x = Factored::one();
        for d in [1, 2, 3, 6, 5] {
            x = x.mul(&Factored::factor(Factor::Cyclo(d)));
        }
        let e = q_only(&x.expand(&ExactEval).unwrap());
        let mut direct = QPoly::one();
        for d in [1, 2, 3, 6, 5] {
            direct = direct * cyclotomic(d);
        }
        assert_eq!(e, QLaurent::from_poly(direct));
    }

    #[test]
    fn linear_factor_normalization() {
        // 1 - q/a = -q a^-1 (1 - a q^-1)
        let f = Factored::one_minus(1, -1, 0, 1);
        assert_eq!(f.mono_exps(), (-1, 0, 1));
        assert_eq!(f.coeff(), &Rat::from_integer((-1).into()));
        assert_eq!(f.exponent(&Factor::Lin { plus: false, a: 1, b: 0, q: -1 }), 1);
    }

    #[test]
    fn substitution_to_zero_and_pole() {
        let f = Factored::one_minus(1, 1, 0, 5);
        assert!(f.subst(Var::A, 1, -5).unwrap().is_zero());
        assert_eq!(f.inv().unwrap().subst(Var::A, 1, -5).unwrap_err(), Error::VanishingDenominator);
        // 1 + b q at b = -q^2 gives 1 - q^3
        let g = Factored::one_minus(-1, 0, 1, 1).subst(Var::B, -1, 2).unwrap();
        assert_eq!(g, Factored::one_minus(1, 0, 0, 3));
    }

    #[test]
    fn split_and_lcm() {
        let x = Factored::q_int(3).div(&Factored::q_int(2).pow(2).unwrap()).unwrap().scale(&Rat::new(1.into(), 6.into()));
        let (n, d) = x.split();
        assert!(n.is_polynomial() && d.is_polynomial());
        assert_eq!(n.mul(&d.inv().unwrap()), x);
        let l = d.lcm(&Factored::factor(Factor::Cyclo(2)).scale(&Rat::from_integer(4.into())));
        assert_eq!(l.coeff(), &Rat::from_integer(12.into()));
        assert_eq!(l.exponent(&Factor::Cyclo(2)), 2);
    }
}
