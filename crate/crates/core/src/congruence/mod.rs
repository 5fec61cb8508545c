//! Congruence semantics for rational functions and the task checker.
//!
//! `A ≡ B (mod M)` means: writing `A - B = u/v`, the denominator `v` is
//! coprime to `M` (after cancelling common factors if needed) and `M | u`.

mod engine;

pub use engine::{check_task, Expr, Root, Task};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{coeffs_in_a, Frac, Ring};
use crate::error::{Error, Result};
use crate::qkit::{cyclotomic, ModulusSpec, ParamFactor};
use crate::{ARat, QLaurent, QPoly, QRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
            Status::Error => "error",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exact,
    #[default]
    Modular,
    Both,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strategy::Exact => "exact",
            Strategy::Modular => "modular",
            Strategy::Both => "both",
        };
        f.write_str(s)
    }
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Strategy::Exact),
            "modular" => Ok(Strategy::Modular),
            "both" => Ok(Strategy::Both),
            _ => Err(Error::Invalid(format!("unknown strategy {s}"))),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
    pub lhs_degree: i64,
    pub strategy: Strategy,
    pub elapsed_ms: u64,
}

impl Verdict {
    pub fn new(status: Status, detail: impl Into<String>) -> Self {
        Verdict { status, detail: detail.into(), lhs_degree: 0, strategy: Strategy::Exact, elapsed_ms: 0 }
    }

    pub fn pass(detail: impl Into<String>) -> Self {
        Self::new(Status::Pass, detail)
    }

    pub fn fail(detail: impl Into<String>) -> Self {
        Self::new(Status::Fail, detail)
    }

    pub fn error(detail: impl Into<String>) -> Self {
        Self::new(Status::Error, detail)
    }

    pub fn inapplicable(detail: impl Into<String>) -> Self {
        Self::new(Status::Inapplicable, detail)
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Everything but the timing, for comparing runs.
    pub fn same_outcome(&self, other: &Verdict) -> bool {
        self.status == other.status && self.detail == other.detail && self.lhs_degree == other.lhs_degree
    }
}

/// `sum_{k<n} sum_{j<=k} c(j) c(k-j)` by direct enumeration of the pairs.
pub fn conv_sum(terms: &[QRat], n: usize) -> QRat {
    let mut acc = QRat::zero();
    for k in 0..n {
        for j in 0..=k {
            let a = terms.get(j).cloned().unwrap_or_else(QRat::zero);
            let b = terms.get(k - j).cloned().unwrap_or_else(QRat::zero);
            acc = acc + a * b;
        }
    }
    acc
}

fn check_modulus(m: &QPoly) -> Result<QPoly> {
    match m.degree() {
        None | Some(0) => Err(Error::Invalid("modulus must be nonconstant".into())),
        _ => Ok(m.monic()),
    }
}

/// Canonical representative of `f` in `Q[q]/M`.
pub fn reduce_mod(f: &QLaurent, m: &QPoly) -> Result<QPoly> {
    let m = check_modulus(m)?;
    let body = f.body().rem_monic(&m)?;
    if f.shift() >= 0 {
        return (body * QPoly::x_pow(f.shift() as usize)).rem_monic(&m);
    }
    let q_inv = inv_mod(&QPoly::x_pow(1), &m).map_err(|_| Error::QNotInvertible)?;
    let k = f.shift().unsigned_abs() as u32;
    let mut p = QPoly::one();
    for _ in 0..k {
        p = (p * q_inv.clone()).rem_monic(&m)?;
    }
    (body * p).rem_monic(&m)
}

/// Inverse of `f` modulo `M` by extended Euclid.
pub fn inv_mod(f: &QPoly, m: &QPoly) -> Result<QPoly> {
    let m = check_modulus(m)?;
    let (g, s, _) = f.ext_gcd(&m);
    if g.degree() != Some(0) {
        return Err(Error::NotInvertible);
    }
    s.rem_monic(&m)
}

/// Rational-function congruence `lhs ≡ rhs (mod modulus)` in `Q(q)`.
pub fn check_rat_congruence(lhs: &QRat, rhs: &QRat, modulus: &QPoly) -> Verdict {
    let m = match check_modulus(modulus) {
        Ok(m) => m,
        Err(e) => return Verdict::error(e.to_string()),
    };
    let diff = lhs.clone() - rhs.clone();
    let mut u = diff.num().body().clone();
    let mut v = diff.den().body().clone();
    if !v.gcd(&m).is_one_poly() {
        let g = u.gcd(&v);
        u = u.divrem(&g).expect("nonzero gcd").0;
        v = v.divrem(&g).expect("nonzero gcd").0;
        if !v.gcd(&m).is_one_poly() {
            return Verdict::error(Error::ModulusMeetsDenominator.to_string());
        }
    }
    let r = u.rem_monic(&m).expect("monic");
    let v = Verdict { strategy: Strategy::Exact, ..Verdict::pass("") };
    if r.is_zero() {
        Verdict { detail: "divisible".into(), ..v }
    } else {
        Verdict {
            status: Status::Fail,
            detail: format!("remainder of degree {}", r.degree().unwrap_or(0)),
            ..v
        }
    }
}

trait IsOne {
    fn is_one_poly(&self) -> bool;
}

impl IsOne for QPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0)
    }
}

fn min_valuation(cs: &[QLaurent], g: &QPoly, cap: u32) -> u32 {
    cs.iter().filter(|c| !c.is_zero()).map(|c| c.body().valuation_monic(g, cap)).min().unwrap_or(cap)
}

/// Parametric congruence in `Q(a, q)`: the `a`-linear factors are checked
/// by substitution, the cyclotomic part coefficientwise in `a`.
pub fn check_param_congruence(lhs: &ARat, rhs: &ARat, spec: &ModulusSpec) -> Verdict {
    let diff = lhs.clone() - rhs.clone();
    let n = spec.n as i64;
    let mut notes = Vec::new();
    for pf in &spec.param_factors {
        let (e, label) = match pf {
            ParamFactor::OneMinusAqn => (-n, format!("1-a*q^{n}")),
            ParamFactor::AMinusQn => (n, format!("a-q^{n}")),
        };
        match diff.subst_a(e) {
            Err(err) => return Verdict::error(format!("{label}: {err}")),
            Ok(x) if !x.is_zero() => return Verdict::fail(format!("{label}: nonzero after a=q^{e}")),
            Ok(_) => notes.push(format!("{label} ok")),
        }
    }
    let parts = match spec.cyclo_parts() {
        Ok(p) => p,
        Err(_) if !spec.param_factors.is_empty() && spec.bracket_power == 0 && spec.phi_power == 0 => Vec::new(),
        Err(e) => return Verdict::error(e.to_string()),
    };
    let (ucs, _) = coeffs_in_a(diff.num());
    let (vcs, _) = coeffs_in_a(diff.den());
    for (d, m) in parts {
        let phi = cyclotomic(d);
        let cap = 64;
        let ev = min_valuation(&vcs, &phi, cap);
        let eu = min_valuation(&ucs, &phi, cap);
        if eu < ev {
            return Verdict::error(format!("Phi_{d}: {}", Error::ModulusMeetsDenominator));
        }
        if eu - ev < m {
            return Verdict::fail(format!("Phi_{d}^{m}: valuation {}", eu - ev));
        }
        notes.push(format!("Phi_{d}^{m} ok"));
    }
    Verdict::pass(notes.join("; "))
}

/// Lemma on antisymmetric sequences: validates both hypotheses, then
/// reports whether the truncated convolution square vanishes.
pub fn zero_lemma_check<T: Ring>(seq: &[Frac<T>], n: usize) -> Result<bool> {
    if n % 2 == 0 || seq.len() != n {
        return Err(Error::Invalid("sequence length must be the odd n".into()));
    }
    let h = (n - 1) / 2;
    for k in 0..n {
        let partner = if k <= h { h - k } else { (3 * n - 1) / 2 - k };
        let s = seq[k].clone() + seq[partner].clone();
        if !s.is_zero() {
            return Err(Error::Antisymmetry(k));
        }
    }
    // over a common denominator D the sum is (sum u_i u_{k-i}) / D^2
    let mut dens: Vec<&T> = Vec::new();
    for x in seq {
        if !dens.contains(&x.den()) {
            dens.push(x.den());
        }
    }
    let u: Vec<T> = seq
        .iter()
        .map(|x| dens.iter().filter(|d| **d != x.den()).fold(x.num().clone(), |acc, d| acc.mul_ref(d)))
        .collect();
    let mut acc = T::zero();
    for k in 0..n {
        for i in 0..=k {
            acc.mul_add(&u[i], &u[k - i]);
        }
    }
    Ok(acc.is_zero())
}

/// Exact equality of two fractions.
pub fn check_identity<T: Ring>(lhs: &Frac<T>, rhs: &Frac<T>) -> bool {
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qkit::q_mono;
    use crate::Rat;

    fn ql(shift: i64, cs: &[i64]) -> QLaurent {
        QLaurent::new(shift, QPoly::from_i64s(cs))
    }

    fn phi(d: u64) -> QPoly {
        cyclotomic(d)
    }

    #[test]
    fn conv_sum_examples() {
        let one = QRat::from_num(q_mono(1, 0));
        let two = QRat::from_num(q_mono(2, 0));
        let x = QRat::from_num(ql(-1, &[1, 0, 1]));
        assert_eq!(conv_sum(std::slice::from_ref(&x), 1), x.clone() * x);
        assert_eq!(conv_sum(&[one.clone(), one.clone()], 2), QRat::from_num(q_mono(3, 0)));
        assert_eq!(conv_sum(&[one, two, QRat::zero()], 3), QRat::from_num(q_mono(9, 0)));
    }

    #[test]
    fn simple_congruences() {
        let q = QRat::from_num(q_mono(1, 1));
        let one = QRat::from_num(q_mono(1, 0));
        assert_eq!(check_rat_congruence(&q, &one, &phi(3)).status, Status::Fail);
        let q3 = QRat::from_num(q_mono(1, 3));
        assert_eq!(check_rat_congruence(&q3, &one, &phi(3)).status, Status::Pass);
    }

    #[test]
    fn denominator_meeting_modulus_is_error() {
        let x = QRat::new(q_mono(1, 0), QLaurent::from_poly(phi(3))).unwrap();
        let v = check_rat_congruence(&x, &QRat::zero(), &phi(3));
        assert_eq!(v.status, Status::Error);
        assert_eq!(v.detail, "modulus meets denominator");
    }

    #[test]
    fn reduce_mod_examples() {
        assert_eq!(reduce_mod(&q_mono(1, 5), &phi(5)).unwrap(), QPoly::one());
        let r = reduce_mod(&q_mono(1, -1), &phi(3)).unwrap();
        assert!(reduce_mod(&(QLaurent::from_poly(r) - q_mono(1, 2)), &phi(3)).unwrap().is_zero());
        assert_eq!(reduce_mod(&q_mono(1, -1), &QPoly::from_i64s(&[0, 0, 1])).unwrap_err(), Error::QNotInvertible);
    }

    #[test]
    fn inv_mod_examples() {
        assert_eq!(inv_mod(&QPoly::one(), &phi(7)).unwrap(), QPoly::one());
        let g = inv_mod(&QPoly::from_i64s(&[0, 1]), &phi(3)).unwrap();
        assert!(((g - QPoly::from_i64s(&[0, 0, 1])).rem(&phi(3)).unwrap()).is_zero());
        assert_eq!(inv_mod(&phi(3), &phi(3).pow(2)).unwrap_err(), Error::NotInvertible);
        let m = phi(5).pow(3);
        let f = QPoly::from_i64s(&[1, 0, -1]);
        let g = inv_mod(&f, &m).unwrap();
        assert_eq!((f * g).rem(&m).unwrap(), QPoly::one());
    }

    #[test]
    fn zero_lemma_small_cases() {
        let r = |x: i64| QRat::from_num(QLaurent::constant(Rat::from_integer(x.into())));
        assert!(zero_lemma_check(&[r(1), r(0), r(-1), r(7), r(-7)], 5).unwrap());
        assert!(zero_lemma_check(&[r(4), r(-4), r(0)], 3).unwrap());
        assert_eq!(zero_lemma_check(&[r(4), r(4), r(0)], 3).unwrap_err(), Error::Antisymmetry(0));
    }
}
