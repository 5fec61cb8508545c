use std::time::Instant;

use num_traits::{One, Zero};

use super::{Status, Strategy, Verdict};
use crate::arith::{Laurent, Residue, Ring};
use crate::error::{Error, Result};
use crate::qkit::{cyclotomic_z, Evaluator, ExactEval, Factor, Factored, ModEval, RatEval, Var};
use crate::{ZLaurent, ZPoly};

/// A sum-of-products expression over factored terms.
#[derive(Clone, Debug)]
pub enum Expr {
    Term(Factored),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    /// `sum_{k<len} sum_{j<=k} c_j c_{k-j}` with `len = terms.len()`.
    Conv(Vec<Factored>),
}

fn conv_w(ts: &[Factored]) -> Factored {
    ts.iter().fold(Factored::one(), |acc, t| acc.lcm(&t.den()))
}

impl Expr {
    pub fn sum_of(terms: Vec<Factored>) -> Self {
        Expr::Sum(terms.into_iter().map(Expr::Term).collect())
    }

    /// A common denominator, built from the structure.
    pub fn den(&self) -> Factored {
        match self {
            Expr::Term(f) => f.den(),
            Expr::Sum(xs) => xs.iter().fold(Factored::one(), |acc, x| acc.lcm(&x.den())),
            Expr::Prod(xs) => xs.iter().fold(Factored::one(), |acc, x| acc.mul(&x.den())),
            Expr::Conv(ts) => conv_w(ts).pow(2).expect("nonzero"),
        }
    }

    pub fn mentions(&self, v: Var) -> bool {
        match self {
            Expr::Term(f) => f.mentions(v),
            Expr::Sum(xs) | Expr::Prod(xs) => xs.iter().any(|x| x.mentions(v)),
            Expr::Conv(ts) => ts.iter().any(|t| t.mentions(v)),
        }
    }

    pub fn subst(&self, v: Var, c: i64, e: i64) -> Result<Expr> {
        Ok(match self {
            Expr::Term(f) => Expr::Term(f.subst(v, c, e)?),
            Expr::Sum(xs) => Expr::Sum(xs.iter().map(|x| x.subst(v, c, e)).collect::<Result<_>>()?),
            Expr::Prod(xs) => Expr::Prod(xs.iter().map(|x| x.subst(v, c, e)).collect::<Result<_>>()?),
            Expr::Conv(ts) => Expr::Conv(ts.iter().map(|t| t.subst(v, c, e)).collect::<Result<_>>()?),
        })
    }

    /// As a quotient of Laurent polynomials in `a` and `q`; `b` must be absent.
    pub fn to_arat(&self) -> Result<crate::ARat> {
        let l = self.den();
        crate::ARat::new(self.eval(&RatEval, &l)?, l.expand(&RatEval)?)
    }

    /// Expands `self * l`, where `l` is a multiple of [`Expr::den`].
    pub fn eval<E: Evaluator>(&self, ev: &E, l: &Factored) -> Result<E::T> {
        match self {
            Expr::Term(f) => f.mul(l).expand(ev),
            Expr::Sum(xs) => {
                let mut acc = E::T::zero();
                for x in xs {
                    acc.add_ref(&x.eval(ev, l)?);
                }
                Ok(acc)
            }
            Expr::Prod(xs) => {
                let mut rest = l.clone();
                let mut acc: Option<E::T> = None;
                for (i, x) in xs.iter().enumerate() {
                    let part = if i + 1 == xs.len() {
                        x.eval(ev, &rest)?
                    } else {
                        let d = x.den();
                        rest = rest.div(&d)?;
                        x.eval(ev, &d)?
                    };
                    acc = Some(match acc {
                        None => part,
                        Some(a) => a.mul_ref(&part),
                    });
                }
                match acc {
                    Some(a) => Ok(a),
                    None => l.expand(ev),
                }
            }
            Expr::Conv(ts) => {
                let w = conv_w(ts);
                let ns = ts.iter().map(|t| t.mul(&w).expand(ev)).collect::<Result<Vec<_>>>()?;
                let mut prefix = Vec::with_capacity(ns.len());
                let mut run = E::T::zero();
                for x in &ns {
                    run.add_ref(x);
                    prefix.push(run.clone());
                }
                let len = ns.len();
                let mut acc = E::T::zero();
                for (j, x) in ns.iter().enumerate() {
                    if !x.is_zero() {
                        acc.mul_add(x, &prefix[len - 1 - j]);
                    }
                }
                let rest = l.div(&w.pow(2)?)?;
                if rest != Factored::one() {
                    acc = acc.mul_ref(&rest.expand(ev)?);
                }
                Ok(acc)
            }
        }
    }
}

/// A substitution `var := sign * q^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Root {
    pub var: Var,
    pub sign: i64,
    pub exp: i64,
}

impl Root {
    pub fn a(exp: i64) -> Self {
        Root { var: Var::A, sign: 1, exp }
    }

    pub fn b(exp: i64) -> Self {
        Root { var: Var::B, sign: 1, exp }
    }

    pub fn label(&self) -> String {
        let v = match self.var {
            Var::A => "a",
            Var::B => "b",
        };
        let s = if self.sign < 0 { "-" } else { "" };
        format!("{v}={s}q^{}", self.exp)
    }

    fn apply(&self, x: &Expr) -> Result<Expr> {
        x.subst(self.var, self.sign, self.exp)
    }
}

/// `lhs ≡ rhs` modulo a product of cyclotomic powers and of linear factors
/// in `a` or `b`, each linear factor given by the root it vanishes at.
#[derive(Clone, Debug)]
pub struct Task {
    pub lhs: Expr,
    pub rhs: Expr,
    pub cyclo: Vec<(u64, u32)>,
    pub roots: Vec<Root>,
    /// Require `lhs == rhs` exactly.
    pub identity: bool,
    /// Specializations of `b` under which the cyclotomic parts are checked.
    pub b_specs: Vec<Root>,
}

impl Task {
    pub fn new(lhs: Expr, rhs: Expr) -> Self {
        Task { lhs, rhs, cyclo: Vec::new(), roots: Vec::new(), identity: false, b_specs: Vec::new() }
    }

    pub fn identity(lhs: Expr, rhs: Expr) -> Self {
        Task { identity: true, ..Task::new(lhs, rhs) }
    }

    pub fn cyclo(mut self, parts: Vec<(u64, u32)>) -> Self {
        self.cyclo = parts;
        self
    }

    pub fn roots(mut self, roots: &[Root]) -> Self {
        self.roots = roots.to_vec();
        self
    }

    pub fn b_specs(mut self, specs: &[Root]) -> Self {
        self.b_specs = specs.to_vec();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pipe {
    Exact,
    Modular,
}

type Part = (Status, String);

fn identity_part(lhs: &Expr, rhs: &Expr, label: &str) -> Part {
    let run = || -> Result<bool> {
        let l = lhs.den().lcm(&rhs.den());
        let u = lhs.eval(&ExactEval, &l)? - rhs.eval(&ExactEval, &l)?;
        Ok(u.is_zero())
    };
    match run() {
        Ok(true) => (Status::Pass, format!("{label} ok")),
        Ok(false) => (Status::Fail, format!("{label}: nonzero difference")),
        Err(e) => (Status::Error, format!("{label}: {e}")),
    }
}

/// `(q^d - 1)^k`: a sparse monic multiple of `Phi_d^k`.
fn sparse_multiple(d: u64, k: u32) -> ZPoly {
    let mut b = ZPoly::x_pow(d as usize);
    b.sub_assign_ref(&ZPoly::one());
    b.pow(k)
}

fn reduce_exact(x: &ZLaurent, sparse: &ZPoly, mz: &ZPoly, ev: &ModEval) -> Result<Residue> {
    let body = x.body().rem_monic(sparse)?.rem_monic(mz)?;
    Ok(Residue::from_int_poly(&body, ev.modulus())?.mul_ref(&ev.q_power(x.shift())))
}

fn cyclo_part(lhs: &Expr, rhs: &Expr, d: u64, m: u32, pipe: Pipe) -> Result<Part> {
    let l = lhs.den().lcm(&rhs.den());
    let e_d = l.exponent(&Factor::Cyclo(d)).max(0) as u32;
    let k = m + e_d;
    let phi_z = cyclotomic_z(d);
    let mz = phi_z.pow(k);
    let ev = ModEval::from_int(mz.clone())?;
    let raw: Laurent<Residue> = match pipe {
        Pipe::Modular => lhs.eval(&ev, &l)? - rhs.eval(&ev, &l)?,
        Pipe::Exact => {
            let u = lhs.eval(&ExactEval, &l)? - rhs.eval(&ExactEval, &l)?;
            if u.terms().any(|(e, c)| e != 0 && !c.is_zero()) {
                return Err(Error::Unsupported("second parameter left in exact reduction".into()));
            }
            let sparse = sparse_multiple(d, k);
            let mut acc = Laurent::<Residue>::zero();
            for (i, c) in u.coeff(0).terms() {
                let r = reduce_exact(c, &sparse, &mz, &ev)?;
                acc.add_ref(&Laurent::monomial(r, i));
            }
            acc
        }
    };
    // the unit part of `l` does not change valuations; it is divided out only
    // to report the remainder of a failing instance
    let phi: &ZPoly = &phi_z;
    let v = raw.terms().map(|(_, c)| c.numer().valuation_monic(phi, k)).min().unwrap_or(k);
    let label = format!("Phi_{d}^{m}");
    if v >= k {
        return Ok((Status::Pass, format!("{label} ok")));
    }
    if v < e_d {
        return Ok((Status::Error, format!("{label}: {}", Error::ModulusMeetsDenominator)));
    }
    let unit = l.restrict(|f| matches!(f, Factor::Cyclo(e) if *e != d), true);
    let r = raw.mul_ref(&ev.invert(&unit.expand(&ev)?)?);
    let pe = phi.pow(e_d);
    let pm = phi.pow(m);
    let mut deg = 0;
    for (_, c) in r.terms() {
        let x = c.numer().div_exact_monic(&pe).expect("valuation").rem_monic(&pm)?;
        deg = deg.max(x.degree().unwrap_or(0));
    }
    Ok((Status::Fail, format!("{label}: valuation {}, remainder degree {deg}", v - e_d)))
}

fn run_part(lhs: &Expr, rhs: &Expr, d: u64, m: u32, pipe: Pipe) -> Part {
    cyclo_part(lhs, rhs, d, m, pipe).unwrap_or_else(|e| (Status::Error, format!("Phi_{d}^{m}: {e}")))
}

fn fold(parts: Vec<Part>) -> (Status, String) {
    let status = if parts.iter().any(|p| p.0 == Status::Error) {
        Status::Error
    } else if parts.iter().any(|p| p.0 == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    };
    (status, parts.into_iter().map(|p| p.1).collect::<Vec<_>>().join("; "))
}

/// Checks a task with the chosen strategy.
pub fn check_task(task: &Task, strategy: Strategy) -> Verdict {
    let t0 = Instant::now();
    let mut parts = Vec::new();
    if task.identity {
        parts.push(identity_part(&task.lhs, &task.rhs, "identity"));
    }
    for root in &task.roots {
        let label = root.label();
        match (root.apply(&task.lhs), root.apply(&task.rhs)) {
            (Ok(l), Ok(r)) => parts.push(identity_part(&l, &r, &label)),
            (Err(e), _) | (_, Err(e)) => parts.push((Status::Error, format!("{label}: {e}"))),
        }
    }
    if !task.cyclo.is_empty() {
        let variants: Vec<(String, Result<(Expr, Expr)>)> =
            if task.lhs.mentions(Var::B) || task.rhs.mentions(Var::B) {
                if task.b_specs.is_empty() {
                    parts.push((Status::Error, "cyclotomic part with free b".into()));
                }
                task.b_specs
                    .iter()
                    .map(|s| (format!("{}: ", s.label()), s.apply(&task.lhs).and_then(|l| Ok((l, s.apply(&task.rhs)?)))))
                    .collect()
            } else {
                vec![(String::new(), Ok((task.lhs.clone(), task.rhs.clone())))]
            };
        for (prefix, pair) in variants {
            let (lhs, rhs) = match pair {
                Ok(p) => p,
                Err(e) => {
                    parts.push((Status::Error, format!("{prefix}{e}")));
                    continue;
                }
            };
            for &(d, m) in &task.cyclo {
                let (st, text) = match strategy {
                    Strategy::Exact => run_part(&lhs, &rhs, d, m, Pipe::Exact),
                    Strategy::Modular => run_part(&lhs, &rhs, d, m, Pipe::Modular),
                    Strategy::Both => {
                        let x = run_part(&lhs, &rhs, d, m, Pipe::Exact);
                        let y = run_part(&lhs, &rhs, d, m, Pipe::Modular);
                        if x == y {
                            x
                        } else {
                            (Status::Error, format!("pipelines disagree: exact [{}], modular [{}]", x.1, y.1))
                        }
                    }
                };
                parts.push((st, format!("{prefix}{text}")));
            }
        }
    }
    let (status, detail) = fold(parts);
    Verdict {
        status,
        detail,
        lhs_degree: task.lhs.den().q_degree(),
        strategy,
        elapsed_ms: t0.elapsed().as_millis() as u64,
    }
}
