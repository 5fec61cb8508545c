//! The registry of congruences: term generators, right-hand sides, moduli
//! and validity predicates, keyed by id.

mod build;
pub mod terms;

pub use build::{build, Built};

use std::time::Instant;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::congruence::{check_task, Status, Strategy, Verdict};
use crate::error::{Error, Result};
use crate::padic::is_prime;
use crate::qkit::{Factored, Var};
use crate::{ARat, Int, QRat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Theorem,
    ParametricTheorem,
    LemmaIdentity,
    Background,
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    /// odd n >= 3
    Odd,
    /// gcd(n, 6) = 1, n > 1
    CoprimeSix,
    /// n = 1 mod 4, n > 1
    OneModFour,
    /// odd prime n
    Prime,
    /// odd n >= 3 with gcd(d, n) = 1
    CoprimeD,
}

impl Predicate {
    /// `None` if the instance is admissible, otherwise the reason it is not.
    pub fn check(&self, p: &Params) -> Option<String> {
        let n = p.n;
        let odd = n % 2 == 1;
        let ok = match self {
            Predicate::Odd => odd && n >= 3,
            Predicate::CoprimeSix => n > 1 && n.gcd(&6) == 1,
            Predicate::OneModFour => n > 1 && n % 4 == 1,
            Predicate::Prime => odd && is_prime(n),
            Predicate::CoprimeD => odd && n >= 3 && p.d.is_none_or(|d| d.gcd(&n) == 1),
        };
        if ok {
            return None;
        }
        Some(
            match self {
                Predicate::Odd => "n must be odd and at least 3",
                Predicate::CoprimeSix => "n must be coprime to 6 and greater than 1",
                Predicate::OneModFour => "n must be 1 mod 4 and greater than 1",
                Predicate::Prime => "n must be an odd prime",
                Predicate::CoprimeD => "n must be odd, at least 3 and coprime to d",
            }
            .to_string(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Single,
    Convolution,
    /// identities, CRT pieces and termwise congruences
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Upper {
    NMinusOne,
    HalfNMinusOne,
    None,
}

/// One registry entry.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub id: &'static str,
    pub kind: Kind,
    pub predicate: Predicate,
    pub shape: Shape,
    pub upper: Upper,
    pub statement: &'static str,
    pub modulus: &'static str,
}

macro_rules! entry {
    ($id:expr, $kind:ident, $pred:ident, $shape:ident, $upper:ident, $stmt:expr, $modulus:expr) => {
        Entry {
            id: $id,
            kind: Kind::$kind,
            predicate: Predicate::$pred,
            shape: Shape::$shape,
            upper: Upper::$upper,
            statement: $stmt,
            modulus: $modulus,
        }
    };
}

static REGISTRY: &[Entry] = &[
    entry!("THM1", Theorem, Odd, Convolution, NMinusOne, "c(k) = [3k+1](q;q^2)_k^3 q^-binom(k+1,2)/((q;q)_k^2 (q^2;q^2)_k); double sum = q[n]^2", "[n] Phi_n^2"),
    entry!("THM2", Theorem, Odd, Convolution, NMinusOne, "c(k) = (-1)^k [3k+1](q;q^2)_k^3/(q;q)_k^3; double sum = q^((n+1)/2)[n]^2", "[n] Phi_n^2"),
    entry!("THM3", Theorem, Odd, Convolution, NMinusOne, "c(k) = (-1)^k q^(k^2) [4k+1](q;q^2)_k^3/(q^2;q^2)_k^3; double sum = q^((n-1)^2/2)[n]^2", "[n] Phi_n^3"),
    entry!("THM4", Theorem, Odd, Convolution, NMinusOne, "c(k) = [4k+1](q;q^2)_k^4/(q^2;q^2)_k^4; double sum = q^(1-n)[n]^2", "[n] Phi_n^3"),
    entry!("THM5", Theorem, Odd, Convolution, NMinusOne, "c(k) = 2(q;q^2)_k^2 q^(2k)/((q^2;q^2)_k^2 (1+q^(2k))); double sum = 1", "Phi_n^2"),
    entry!("THM6", Theorem, Odd, Convolution, NMinusOne, "c(k) = (q;q^2)_k^2 (q^2;q^4)_k q^(2k)/((q^2;q^2)_k^2 (q^4;q^4)_k); double sum = A^4 q^(n-1)(1+4[n]^2 sum q^(4k-2)/[4k-2]^2) or 0 by n mod 4", "Phi_n^3"),
    entry!("THM7", Theorem, Odd, Convolution, NMinusOne, "c(k) = (-1)^k [4k+1](q;q^2)_k^4 (q^2;q^4)_k q^k/((q^2;q^2)_k^4 (q^4;q^4)_k); double sum = [n]^2 A^4 or 0 by n mod 4", "[n] Phi_n^2"),
    entry!("THM8", Theorem, Odd, Convolution, NMinusOne, "c(k) = [4k+1](q;q^2)_k^6 q^k/(q^2;q^2)_k^6; double sum = q^(1-n)[n]^2 S^2, S = sum_{k<=(n-1)/2} (q;q^2)_k^4 q^(2k)/(q^2;q^2)_k^4", "[n] Phi_n^2"),
    entry!("A1", ParametricTheorem, Odd, Convolution, NMinusOne, "c(k) = [3k+1](aq,q/a,q;q^2)_k q^-binom(k+1,2)/((aq,q/a;q)_k (q^2;q^2)_k); double sum = q^(1-n)[n]^2", "[n](1-aq^n)(a-q^n)"),
    entry!("A2", ParametricTheorem, Odd, Convolution, NMinusOne, "c(k) = (-1)^k [3k+1](aq,q/a,q;q^2)_k/(aq,q/a,q;q)_k; double sum = q^((n-1)^2/2)[n]^2", "[n](1-aq^n)(a-q^n)"),
    entry!("A3", ParametricTheorem, Odd, Convolution, NMinusOne, "c(k) = (-1)^k q^(k^2) [4k+1](aq,q/a,q;q^2)_k/(aq^2,q^2/a,q^2;q^2)_k; double sum = q^((n-1)^2/2)[n]^2", "[n] Phi_n (1-aq^n)(a-q^n)"),
    entry!("A4", ParametricTheorem, Odd, Convolution, NMinusOne, "c(k) = [4k+1](aq,q/a;q^2)_k (q;q^2)_k^2/((aq^2,q^2/a;q^2)_k (q^2;q^2)_k^2); double sum = q^(1-n)[n]^2", "[n] Phi_n (1-aq^n)(a-q^n)"),
    entry!("LEM-A1", LemmaIdentity, Odd, Single, HalfNMinusOne, "A1 summand at a = q^n summed to (n-1)/2 equals q^((1-n)/2)[n]", "identity"),
    entry!("LEM-A2", LemmaIdentity, Odd, Single, HalfNMinusOne, "A2 summand at a = q^n summed to (n-1)/2 equals (-q)^((n-1)^2/4)[n]", "identity"),
    entry!("GUO1", Background, Odd, Single, HalfNMinusOne, "sum_{k<=(n-1)/2} of the A1 summand = q^((1-n)/2)[n]", "[n](1-aq^n)(a-q^n)"),
    entry!("GUO2", Background, Odd, Single, HalfNMinusOne, "sum_{k<=(n-1)/2} of the A2 summand = (-q)^((n-1)^2/4)[n]", "[n](1-aq^n)(a-q^n)"),
    entry!("GS-SYM", Background, Odd, Other, None, "(aq;q^2)_{m-k}/(q^2/a;q^2)_{m-k} = (-a)^(m-2k)(aq;q^2)_k/(q^2/a;q^2)_k q^((n-1)^2/4+k), m = (n-1)/2", "Phi_n"),
    entry!("FALSE1", Background, Odd, Single, HalfNMinusOne, "sum z(k) = (-q)^((n-1)^2/4)[n] sum (1-b)(aq,q/a;q^2)_k q^k/((1-bq^(2k))(q,q^2;q^2)_k)", "[n](1-aq^n)(a-q^n)"),
    entry!("FALSE2", Background, Odd, Single, HalfNMinusOne, "sum z(k) = [n] sum (q,q/b;q^2)_k b^k/(aq^2,q^2/a;q^2)_k", "b-q^n"),
    entry!("QLONG1", Background, Odd, Single, HalfNMinusOne, "sum [4k+1](aq,q/a,q/b,q;q^2)_k b^k/(aq^2,q^2/a,bq^2,q^2;q^2)_k = (b/q)^m (q^2/b;q^2)_m/(bq^2;q^2)_m [n]", "[n](1-aq^n)(a-q^n)"),
    entry!("QLONG2", Background, Odd, Single, HalfNMinusOne, "same sum = (q;q^2)_m^2 [n]/(aq^2,q^2/a;q^2)_m", "b-q^n"),
    entry!("ANDREWS-JAIN", Background, OneModFour, Single, HalfNMinusOne, "sum (aq,q/a,q/b,-q/b;q^2)_k q^(2k)/(q^2,q^2,-q^2,q^2/b^2;q^2)_k against both Whipple-type evaluations", "(1-aq^n)(a-q^n) and b-q^n"),
    entry!("CRT-AB1", LemmaIdentity, Odd, Other, None, "(b-q^n)(ab-1-a^2+aq^n)/((a-b)(1-ab)) = 1", "(1-aq^n)(a-q^n)"),
    entry!("CRT-AB2", LemmaIdentity, Odd, Other, None, "(1-aq^n)(a-q^n)/((a-b)(1-ab)) = 1", "b-q^n"),
    entry!("CRT-REL", LemmaIdentity, Odd, Other, None, "(1-t)(1+a^2-a-at) = (1-a)^2+(1-at)(a-t), t = q^n", "identity"),
    entry!("BG-Q4B", Background, CoprimeSix, Single, HalfNMinusOne, "sum [8k+1](q;q^2)_k^2 (q;q^2)_2k q^(2k^2)/((q^2;q^2)_2k (q^6;q^6)_k^2) = q^((1-n)/2)[n](-3|n)", "[n] Phi_n^2"),
    entry!("BG-EL", Background, CoprimeSix, Convolution, NMinusOne, "double sum of the BG-Q4B summand = q[n]^2", "[n] Phi_n^2"),
    entry!("BG-GW", Background, Odd, Single, HalfNMinusOne, "sum [4k+1](q;q^2)_k^4/(q^2;q^2)_k^4 = q^((1-n)/2)[n] + (n^2-1)(1-q)^2/24 q^((1-n)/2)[n]^3", "[n] Phi_n^3"),
    entry!("BG-RV", Background, Prime, Single, NMinusOne, "sum_{k<p} 2(q;q^2)_k^2 q^(2k)/((q^2;q^2)_k^2 (1+q^(2k))) = (-1)^((p-1)/2)", "[p]^2"),
    entry!("BG-MORE1", Background, Odd, Single, NMinusOne, "sum_{k<n} 2(aq,q/a;q^2)_k q^(2k)/((q^2;q^2)_k^2 (1+q^(2k))) = (-1)^((n-1)/2)", "(1-aq^n)(a-q^n)"),
    entry!("BG-H1", Background, Odd, Single, HalfNMinusOne, "sum of the THM6 summand = [n](q^3;q^4)_{(n-1)/2}/(q^5;q^4)_{(n-1)/2}", "Phi_n^3 (n = 3 mod 4), Phi_n^2 (n = 1 mod 4)"),
    entry!("BG-H2", Background, OneModFour, Single, HalfNMinusOne, "sum of the THM6 summand = A^2 q^((n-1)/2)(1+2[n]^2 sum q^(4k-2)/[4k-2]^2)", "Phi_n^3"),
    entry!("BG-A2INPUT", Background, Odd, Single, HalfNMinusOne, "sum of the THM7 summand = [n]A^2 or 0 by n mod 4", "[n] Phi_n^2"),
    entry!("BG-GS-T8", Background, Odd, Single, HalfNMinusOne, "sum of the THM8 summand = q^((1-n)/2)[n] S", "[n] Phi_n^2"),
    entry!("CONJ2", Conjecture, Odd, Convolution, NMinusOne, "A3 modulo [n]^2(1-aq^n)(a-q^n); THM3 modulo [n]^2 Phi_n^2", "[n]^2(1-aq^n)(a-q^n); [n]^2 Phi_n^2"),
    entry!("CONJ3", Conjecture, Odd, Convolution, NMinusOne, "THM4 double sum = q^(1-n)[n]^2 + (n^2-1)(1-q)^2/12 q[n]^4", "[n]^2 Phi_n^3"),
    entry!("CONJ4", Conjecture, Odd, Convolution, NMinusOne, "BG-MORE1 double sum = 1 modulo Phi_n(1-aq^n)(a-q^n); THM5 modulo Phi_n^3", "Phi_n(1-aq^n)(a-q^n); Phi_n^3"),
    entry!("CONJ5", Conjecture, CoprimeD, Convolution, NMinusOne, "c(k) = 2(q^r;q^d)_k (q^(d-r);q^d)_k q^(dk)/((q^d;q^d)_k^2 (1+q^(dk))); double sum = 1", "Phi_n^2"),
    entry!("CONJ5-PARAM", Conjecture, CoprimeD, Single, NMinusOne, "sum_{k<n} 2(aq^r;q^d)_k (q^(d-r)/a;q^d)_k q^(dk)/((q^d;q^d)_k^2 (1+q^(dk))) = (-1)^<-r/d>_n", "(1-aq^(r+d<-r/d>_n))(a-q^(d-r+d<(r-d)/d>_n))"),
    entry!("CONJ7", Conjecture, Odd, Convolution, NMinusOne, "THM7 double sum = [n]^2 A^4 (n = 1 mod 4) or 0 (n = 3 mod 4)", "[n]^2 Phi_n^2 or [n]^2 Phi_n^4"),
    entry!("CONJ8", Conjecture, Odd, Convolution, NMinusOne, "THM8 double sum = q^(1-n)([n]^2 + (n^2-1)(1-q)^2/12 [n]^4) S^2", "[n]^2 Phi_n^3"),
];

pub fn registry() -> &'static [Entry] {
    REGISTRY
}

pub fn entry(id: &str) -> Result<&'static Entry> {
    REGISTRY.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownId(id.into()))
}

/// The registry in serializable form.
pub fn manifest() -> &'static [Entry] {
    REGISTRY
}

/// Instance parameters: `n`, plus `(d, r)` for the entries that take them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u64>,
}

impl Params {
    pub fn n(n: u64) -> Self {
        Params { n, d: None, r: None }
    }

    pub fn with_dr(n: u64, d: u64, r: u64) -> Self {
        Params { n, d: Some(d), r: Some(r) }
    }
}

/// Knobs for the two places where a statement admits more than one reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Options {
    /// First index of the inner sum of `q^(4k-2)/[4k-2]^2` in THM6 and BG-H2.
    pub inner_sum_start: i64,
    /// The `q`-power of the CONJ5 summand is `q^(e d k)` with this `e`.
    pub conj5_q_multiplier: i64,
}

impl Default for Options {
    fn default() -> Self {
        Options { inner_sum_start: 1, conj5_q_multiplier: 1 }
    }
}

/// `(d, r)` pairs scanned for the entries taking them when none are given.
pub const DEFAULT_D_MAX: u64 = 4;

/// Instances of `id` at `n`; only the `(d, r)` entries expand to several.
pub fn instances(id: &str, n: u64) -> Result<Vec<Params>> {
    let e = entry(id)?;
    if e.predicate != Predicate::CoprimeD {
        return Ok(vec![Params::n(n)]);
    }
    let mut out = Vec::new();
    for d in 2..=DEFAULT_D_MAX {
        if d.gcd(&n) != 1 {
            continue;
        }
        for r in 1..d {
            out.push(Params::with_dr(n, d, r));
        }
    }
    Ok(out)
}

/// Checks one instance.
pub fn check_instance(id: &str, params: &Params, strategy: Strategy, opts: &Options) -> Result<Verdict> {
    let t0 = Instant::now();
    let e = entry(id)?;
    let stamp = |mut v: Verdict| {
        v.strategy = strategy;
        v.elapsed_ms = t0.elapsed().as_millis() as u64;
        v
    };
    if let Some(why) = e.predicate.check(params) {
        return Ok(stamp(Verdict::inapplicable(why)));
    }
    let tasks = match build(id, params, opts)? {
        Built::Inapplicable(why) => return Ok(stamp(Verdict::inapplicable(why))),
        Built::Tasks(t) => t,
    };
    let mut status = Status::Pass;
    let mut details = Vec::new();
    let mut degree = 0;
    for (label, task) in &tasks {
        let v = check_task(task, strategy);
        degree = degree.max(v.lhs_degree);
        status = worse(status, v.status);
        details.push(if label.is_empty() { v.detail } else { format!("{label}: {}", v.detail) });
    }
    Ok(stamp(Verdict { status, detail: details.join(" | "), lhs_degree: degree, strategy, elapsed_ms: 0 }))
}

/// Error over fail over pass; inapplicable only if nothing else ran.
fn worse(a: Status, b: Status) -> Status {
    let rank = |s: Status| match s {
        Status::Inapplicable => 0,
        Status::Pass => 1,
        Status::Fail => 2,
        Status::Error => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// Checks `id` at `n`, folding over all default instances.
pub fn check_entry(id: &str, n: u64, strategy: Strategy) -> Result<Verdict> {
    let opts = Options::default();
    if let Some(why) = entry(id)?.predicate.check(&Params::n(n)) {
        return Ok(Verdict { strategy, ..Verdict::inapplicable(why) });
    }
    let insts = instances(id, n)?;
    if insts.len() == 1 {
        return check_instance(id, &insts[0], strategy, &opts);
    }
    if insts.is_empty() {
        return Ok(Verdict { strategy, ..Verdict::inapplicable("no admissible (d, r) for this n") });
    }
    let t0 = Instant::now();
    let mut status = Status::Inapplicable;
    let mut details = Vec::new();
    let mut degree = 0;
    for p in &insts {
        let v = check_instance(id, p, strategy, &opts)?;
        status = worse(status, v.status);
        degree = degree.max(v.lhs_degree);
        details.push(format!("d={},r={}: {}", p.d.unwrap_or(0), p.r.unwrap_or(0), v.detail));
    }
    Ok(Verdict {
        status,
        detail: details.join(" | "),
        lhs_degree: degree,
        strategy,
        elapsed_ms: t0.elapsed().as_millis() as u64,
    })
}

/// The summand of `id` at `(n, k)` with the parameters present.
pub fn summand(id: &str, params: &Params, k: i64, opts: &Options) -> Result<Factored> {
    let e = entry(id)?;
    if let Some(why) = e.predicate.check(params) {
        return Err(Error::Invalid(why));
    }
    let desc = build::summand_desc(id, params, opts).ok_or_else(|| Error::Unsupported(format!("{id} has no single summand")))?;
    let mut f = desc.at(k);
    if matches!(id, "LEM-A1" | "LEM-A2") {
        f = f.subst(Var::A, 1, params.n as i64)?;
    }
    Ok(f)
}

/// `c(k)` with every parameter set to one.
pub fn term(id: &str, n: u64, k: i64) -> Result<QRat> {
    let f = summand(id, &Params::n(n), k, &Options::default())?;
    f.subst(Var::A, 1, 0)?.subst(Var::B, 1, 0)?.to_qrat()
}

/// `c(k)` in `a` and `q`; a second parameter `b`, if any, is set to one.
pub fn param_term(id: &str, n: u64, k: i64) -> Result<ARat> {
    let f = summand(id, &Params::n(n), k, &Options::default())?;
    f.subst(Var::B, 1, 0)?.to_arat()
}

/// Right-hand side of a non-parametric single or double sum congruence.
pub fn rhs(id: &str, n: u64) -> Result<QRat> {
    let e = entry(id)?;
    let p = Params::n(n);
    if let Some(why) = e.predicate.check(&p) {
        return Err(Error::Invalid(why));
    }
    let x = build::rhs_expr(id, &p, &Options::default())?;
    if x.mentions(Var::A) || x.mentions(Var::B) {
        return Err(Error::Unsupported(format!("{id} has a parametric right-hand side")));
    }
    let (num, den) = x.to_arat()?.into_parts();
    QRat::new(num.coeff(0), den.coeff(0))
}

/// Right-hand side in `a` and `q`; `b`, if present, is set to one.
pub fn param_rhs(id: &str, n: u64) -> Result<ARat> {
    let e = entry(id)?;
    let p = Params::n(n);
    if let Some(why) = e.predicate.check(&p) {
        return Err(Error::Invalid(why));
    }
    build::rhs_expr(id, &p, &Options::default())?.subst(Var::B, 1, 0)?.to_arat()
}

/// Compares the `q -> 1` limit of a THM1/THM2 summand with its integer counterpart.
pub fn q1_cross_check(id: &str, p: u64, k: i64) -> Result<bool> {
    let w: i64 = match id {
        "THM1" => 16,
        "THM2" => -8,
        _ => return Err(Error::Unsupported(format!("{id} has no integer limit"))),
    };
    if k < 0 || k as u64 >= p {
        return Err(Error::Invalid("k must satisfy 0 <= k < p".into()));
    }
    let lim = term(id, p, k)?.eval_limit_q1()?;
    let b = crate::padic::central_binomial(k as u64);
    let num = Int::from(3 * k + 1) * b.pow(3);
    let expect = Rat::new(num, Int::from(w).pow(k as u32));
    Ok(lim == expect)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = REGISTRY.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
    }

    #[test]
    fn unknown_id() {
        assert_eq!(entry("THM99").unwrap_err(), Error::UnknownId("THM99".into()));
    }

    #[test]
    fn n_one_is_inapplicable() {
        for e in REGISTRY {
            let v = check_entry(e.id, 1, Strategy::Modular).unwrap();
            assert_eq!(v.status, Status::Inapplicable, "{}", e.id);
        }
    }

    #[test]
    fn thm1_small() {
        for n in [3, 5] {
            let v = check_entry("THM1", n, Strategy::Both).unwrap();
            assert_eq!(v.status, Status::Pass, "n={n}: {}", v.detail);
        }
    }
}
