//! q-integers, q-shifted factorials, cyclotomic polynomials and moduli.

mod eval;
mod factored;

pub use eval::{tri_coeff, Evaluator, ExactEval, ModEval, RatEval, Tri};
pub use factored::{Factor, Factored, Var};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{to_rat_poly, Laurent, Poly, Ring};
use crate::error::{Error, Result};
use crate::{BiPoly, Int, QLaurent, QPoly, Rat, ZPoly};

/// `[n] = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: i64) -> Result<QPoly> {
    if n < 0 {
        return Err(Error::NegativeQInt(n));
    }
    Ok(Poly::new(vec![Rat::one(); n as usize]))
}

/// `coeff * a^aexp * q^qexp`
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: Rat,
    pub aexp: i64,
    pub qexp: i64,
}

impl Monomial {
    pub fn new(coeff: i64, aexp: i64, qexp: i64) -> Self {
        Monomial { coeff: Rat::from_integer(coeff.into()), aexp, qexp }
    }

    pub fn to_bipoly(&self) -> BiPoly {
        Laurent::monomial(QLaurent::monomial(self.coeff.clone(), self.qexp), self.aexp)
    }
}

/// `(base; q^step)_k = prod_{j<k} (1 - base * q^(j*step))`.
pub fn q_pochhammer(base: &Monomial, step: i64, k: usize) -> BiPoly {
    let mut acc = BiPoly::one();
    for j in 0..k as i64 {
        let m = Monomial { coeff: base.coeff.clone(), aexp: base.aexp, qexp: base.qexp + j * step };
        let f = BiPoly::one() - m.to_bipoly();
        acc = acc.mul_ref(&f);
    }
    acc
}

fn cyclo_memo() -> &'static Mutex<HashMap<u64, Arc<ZPoly>>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, Arc<ZPoly>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Phi_n(q)` with integer coefficients, memoized.
pub fn cyclotomic_z(n: u64) -> Arc<ZPoly> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclo_memo().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = ZPoly::x_pow(n as usize);
    num.sub_assign_ref(&ZPoly::one());
    for d in divisors(n) {
        if d < n {
            let f = cyclotomic_z(d);
            num = num.div_exact_monic(&f).expect("cyclotomic divisibility");
        }
    }
    let p = Arc::new(num);
    cyclo_memo().lock().unwrap().insert(n, p.clone());
    p
}

/// `Phi_n(q)` over the rationals.
pub fn cyclotomic(n: u64) -> QPoly {
    to_rat_poly(&cyclotomic_z(n))
}

/// Seeds the memo with a precomputed polynomial after checking that it
/// has the right degree and divides `q^n - 1`.
pub fn preload_cyclotomic(n: u64, coeffs: Vec<Int>) -> Result<()> {
    let p = ZPoly::new(coeffs);
    let mut qn = ZPoly::x_pow(n as usize);
    qn.sub_assign_ref(&ZPoly::one());
    let ok = n >= 1
        && p.degree() == Some(totient(n) as usize)
        && p.leading().is_some_and(|c| c.is_one())
        && qn.div_exact_monic(&p).is_some();
    if !ok {
        return Err(Error::Invalid(format!("bad cached cyclotomic polynomial for n={n}")));
    }
    cyclo_memo().lock().unwrap().entry(n).or_insert_with(|| Arc::new(p));
    Ok(())
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Extra `a`-linear factor of a modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamFactor {
    /// `1 - a q^n`
    OneMinusAqn,
    /// `a - q^n`
    AMinusQn,
}

/// `[n]^bracket_power * Phi_n^phi_power * prod(param_factors)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusSpec {
    pub n: u64,
    pub bracket_power: u32,
    pub phi_power: u32,
    pub param_factors: Vec<ParamFactor>,
}

impl ModulusSpec {
    pub fn new(n: u64, bracket_power: u32, phi_power: u32) -> Self {
        ModulusSpec { n, bracket_power, phi_power, param_factors: Vec::new() }
    }

    pub fn with_params(mut self, p: &[ParamFactor]) -> Self {
        self.param_factors = p.to_vec();
        self
    }

    /// The cyclotomic part as `(d, multiplicity)` pairs in increasing `d`.
    pub fn cyclo_parts(&self) -> Result<Vec<(u64, u32)>> {
        if self.n <= 1 {
            return Err(Error::DegenerateModulus);
        }
        let mut out = Vec::new();
        for d in divisors(self.n) {
            if d == 1 {
                continue;
            }
            let m = if d == self.n { self.bracket_power + self.phi_power } else { self.bracket_power };
            if m > 0 {
                out.push((d, m));
            }
        }
        Ok(out)
    }
}

/// Pairwise coprime prime-power factorization of the cyclotomic part of a modulus.
pub fn modulus_factors(spec: &ModulusSpec) -> Result<Vec<(QPoly, u32)>> {
    Ok(spec.cyclo_parts()?.into_iter().map(|(d, m)| (cyclotomic(d), m)).collect())
}

/// Least non-negative residue of `x` modulo `m`.
pub fn residue_mod(x: &Rat, m: &Int) -> Result<Int> {
    if !m.is_positive() {
        return Err(Error::Invalid("modulus must be positive".into()));
    }
    let den = x.denom();
    let g = den.gcd(m);
    if !g.is_one() {
        return Err(Error::Invalid(format!("denominator {den} not coprime to {m}")));
    }
    let inv = mod_inverse(den, m).expect("coprime");
    Ok((x.numer() * inv).mod_floor(m))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// `q`-exponent of a Laurent monomial helper used by tests and the catalog.
pub fn q_mono(c: i64, e: i64) -> QLaurent {
    if c == 0 {
        return QLaurent::zero();
    }
    QLaurent::monomial(Rat::from_integer(c.into()), e)
}
