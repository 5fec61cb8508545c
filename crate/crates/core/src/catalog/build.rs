//! Per-id construction of checker tasks.

use num_integer::Integer;

use super::terms::{self, TermDesc};
use super::{Options, Params};
use crate::congruence::{Expr, Root, Task};
use crate::error::{Error, Result};
use crate::padic::jacobi;
use crate::qkit::{Factored, ModulusSpec, Var};
use crate::{Int, Rat};

pub enum Built {
    Tasks(Vec<(String, Task)>),
    Inapplicable(String),
}

fn one(task: Task) -> Built {
    Built::Tasks(vec![(String::new(), task)])
}

fn t(f: Factored) -> Expr {
    Expr::Term(f)
}

fn parts(n: u64, bracket: u32, phi: u32) -> Vec<(u64, u32)> {
    ModulusSpec::new(n, bracket, phi).cyclo_parts().expect("n > 1")
}

fn a_roots(n: i64) -> [Root; 2] {
    [Root::a(-n), Root::a(n)]
}

/// `b = -1, -q, -q^2`: the cyclotomic part of a congruence with a free `b`
/// is checked under these.
const B_SPECS: [Root; 3] = [
    Root { var: Var::B, sign: -1, exp: 0 },
    Root { var: Var::B, sign: -1, exp: 1 },
    Root { var: Var::B, sign: -1, exp: 2 },
];

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn q(e: i64) -> Factored {
    Factored::q_pow(e)
}

fn qi(m: i64) -> Factored {
    Factored::q_int(m)
}

fn pw(f: Factored, e: i64) -> Factored {
    f.pow(e).expect("nonzero")
}

fn frac(num: i64, den: i64) -> Factored {
    Factored::constant(Rat::new(Int::from(num), Int::from(den)))
}

/// `(c a^a b^b q^q; q^step)_k`
fn poch(c: i64, a: i64, b: i64, qq: i64, step: i64, k: i64) -> Factored {
    Factored::poch(c, a, b, qq, step, k)
}

fn ratio(num: Factored, den: Factored) -> Factored {
    num.div(&den).expect("nonzero denominator")
}

fn conv(desc: &TermDesc, n: i64) -> Expr {
    Expr::Conv(desc.range(n - 1))
}

fn single(desc: &TermDesc, upto: i64) -> Expr {
    Expr::sum_of(desc.range(upto))
}

/// `(q^2;q^4)_m / (q^4;q^4)_m`, `m = (n-1)/4`
fn big_a(n: i64) -> Factored {
    let m = (n - 1) / 4;
    ratio(poch(1, 0, 0, 2, 4, m), poch(1, 0, 0, 4, 4, m))
}

/// `1 + c [n]^2 sum_{k=k0}^{m} q^(4k-2)/[4k-2]^2`
fn harmonic_tail(n: i64, c: i64, k0: i64) -> Expr {
    let m = (n - 1) / 4;
    let mut xs = vec![t(Factored::one())];
    for k in k0..=m {
        let x = Factored::int(c).mul(&pw(qi(n), 2)).mul(&q(4 * k - 2)).mul(&pw(qi(4 * k - 2), -2));
        xs.push(t(x));
    }
    Expr::Sum(xs)
}

/// `sum_{k<=(n-1)/2} (q;q^2)_k^4 q^(2k)/(q^2;q^2)_k^4`
fn s_sum(n: i64) -> Expr {
    single(&terms::thm8_inner(), (n - 1) / 2)
}

/// `(n^2-1)(1-q)^2/den`
fn gw_coeff(n: i64, den: i64) -> Factored {
    frac(n * n - 1, den).mul(&pw(Factored::one_minus(1, 0, 0, 1), 2))
}

fn need_dr(p: &Params) -> Result<(i64, i64)> {
    match (p.d, p.r) {
        (Some(d), Some(r)) if r >= 1 && r < d => Ok((d as i64, r as i64)),
        (Some(_), Some(_)) => Err(Error::Invalid("need 1 <= r < d".into())),
        _ => Err(Error::Invalid("this entry needs d and r".into())),
    }
}

/// `x` with `x * d = -r (mod n)`, `0 <= x < n`.
fn frac_residue(num: i64, d: i64, n: i64) -> i64 {
    let g = d.extended_gcd(&n);
    (num * g.x).rem_euclid(n)
}

/// The summand generating the sums of `id`, where there is one.
pub(super) fn summand_desc(id: &str, p: &Params, opts: &Options) -> Option<TermDesc> {
    Some(match id {
        "THM1" => terms::thm1(),
        "THM2" => terms::thm2(),
        "THM3" => terms::thm3(),
        "THM4" | "BG-GW" | "CONJ3" => terms::thm4(),
        "THM5" | "BG-RV" => terms::thm5(),
        "THM6" | "BG-H1" | "BG-H2" => terms::thm6(),
        "THM7" | "BG-A2INPUT" | "CONJ7" => terms::thm7(),
        "THM8" | "BG-GS-T8" | "CONJ8" => terms::thm8(),
        "A1" | "LEM-A1" | "GUO1" => terms::a1(),
        "A2" | "LEM-A2" | "GUO2" => terms::a2(),
        "A3" | "CONJ2" => terms::a3(),
        "A4" => terms::a4(),
        "FALSE1" | "FALSE2" => terms::false_z(),
        "QLONG1" | "QLONG2" => terms::long_z(),
        "ANDREWS-JAIN" => terms::whipple_z(),
        "BG-Q4B" | "BG-EL" => terms::q4b(),
        "BG-MORE1" | "CONJ4" => terms::more1(),
        "CONJ5" => {
            let (d, r) = need_dr(p).ok()?;
            terms::conj5(d, r, opts.conj5_q_multiplier)
        }
        "CONJ5-PARAM" => {
            let (d, r) = need_dr(p).ok()?;
            terms::conj5_param(d, r)
        }
        _ => return None,
    })
}

/// The checker tasks for an admissible instance.
pub fn build(id: &str, p: &Params, opts: &Options) -> Result<Built> {
    let n = p.n as i64;
    let un = p.n;
    let h = (n - 1) / 2;
    let desc = summand_desc(id, p, opts);
    let d = || desc.clone().expect("entry has a summand");
    let n1 = n % 4 == 1;
    Ok(match id {
        "THM1" => one(Task::new(conv(&d(), n), t(q(1).mul(&pw(qi(n), 2)))).cyclo(parts(un, 1, 2))),
        "THM2" => one(Task::new(conv(&d(), n), t(q((n + 1) / 2).mul(&pw(qi(n), 2)))).cyclo(parts(un, 1, 2))),
        "THM3" => one(Task::new(conv(&d(), n), t(q((n - 1) * (n - 1) / 2).mul(&pw(qi(n), 2)))).cyclo(parts(un, 1, 3))),
        "THM4" => one(Task::new(conv(&d(), n), t(q(1 - n).mul(&pw(qi(n), 2)))).cyclo(parts(un, 1, 3))),
        "THM5" => one(Task::new(conv(&d(), n), t(Factored::one())).cyclo(parts(un, 0, 2))),
        "THM6" => {
            let rhs = if n1 {
                Expr::Prod(vec![t(pw(big_a(n), 4).mul(&q(n - 1))), harmonic_tail(n, 4, opts.inner_sum_start)])
            } else {
                t(Factored::zero())
            };
            one(Task::new(conv(&d(), n), rhs).cyclo(vec![(un, 3)]))
        }
        "THM7" => {
            let rhs = if n1 { pw(qi(n), 2).mul(&pw(big_a(n), 4)) } else { Factored::zero() };
            one(Task::new(conv(&d(), n), t(rhs)).cyclo(parts(un, 1, 2)))
        }
        "THM8" => {
            let s = s_sum(n);
            let rhs = Expr::Prod(vec![t(q(1 - n).mul(&pw(qi(n), 2))), s.clone(), s]);
            one(Task::new(conv(&d(), n), rhs).cyclo(parts(un, 1, 2)))
        }
        "A1" | "A4" => {
            let phi = if id == "A1" { 0 } else { 1 };
            one(Task::new(conv(&d(), n), t(q(1 - n).mul(&pw(qi(n), 2)))).cyclo(parts(un, 1, phi)).roots(&a_roots(n)))
        }
        "A2" | "A3" => {
            let phi = if id == "A2" { 0 } else { 1 };
            let rhs = q((n - 1) * (n - 1) / 2).mul(&pw(qi(n), 2));
            one(Task::new(conv(&d(), n), t(rhs)).cyclo(parts(un, 1, phi)).roots(&a_roots(n)))
        }
        "LEM-A1" | "LEM-A2" | "GUO1" | "GUO2" => {
            let rhs = if id.ends_with('1') { q((1 - n) / 2).mul(&qi(n)) } else { Factored::mono(sign(h * h), 0, 0, h * h).mul(&qi(n)) };
            let lhs = single(&d(), h);
            if id.starts_with("LEM") {
                one(Task::identity(lhs.subst(Var::A, 1, n)?, t(rhs)))
            } else {
                one(Task::new(lhs, t(rhs)).cyclo(parts(un, 1, 0)).roots(&a_roots(n)))
            }
        }
        "GS-SYM" => {
            let side = |k: i64| ratio(poch(1, 1, 0, 1, 2, k), poch(1, -1, 0, 2, 2, k));
            let tasks = (0..=h)
                .map(|k| {
                    let rhs = Factored::mono(sign(h), h - 2 * k, 0, h * h + k).mul(&side(k));
                    (format!("k={k}"), Task::new(t(side(h - k)), t(rhs)).cyclo(vec![(un, 1)]))
                })
                .collect();
            Built::Tasks(tasks)
        }
        "FALSE1" => {
            let rhs = Expr::Prod(vec![t(Factored::mono(sign(h * h), 0, 0, h * h).mul(&qi(n))), single(&terms::false1_rhs(), h)]);
            one(Task::new(single(&d(), h), rhs).cyclo(parts(un, 1, 0)).roots(&a_roots(n)).b_specs(&B_SPECS))
        }
        "FALSE2" => {
            let rhs = Expr::Prod(vec![t(qi(n)), single(&terms::false2_rhs(), h)]);
            one(Task::new(single(&d(), h), rhs).roots(&[Root::b(n)]))
        }
        "QLONG1" => {
            let rhs = Factored::mono(1, 0, h, -h).mul(&ratio(poch(1, 0, -1, 2, 2, h), poch(1, 0, 1, 2, 2, h))).mul(&qi(n));
            one(Task::new(single(&d(), h), t(rhs)).cyclo(parts(un, 1, 0)).roots(&a_roots(n)).b_specs(&B_SPECS))
        }
        "QLONG2" => {
            let den = poch(1, 1, 0, 2, 2, h).mul(&poch(1, -1, 0, 2, 2, h));
            let rhs = ratio(pw(poch(1, 0, 0, 1, 2, h), 2).mul(&qi(n)), den);
            one(Task::new(single(&d(), h), t(rhs)).roots(&[Root::b(n)]))
        }
        "ANDREWS-JAIN" => {
            let m = (n - 1) / 4;
            let qb = Factored::mono(1, 0, -h, h);
            let andrews = ratio(
                poch(1, 0, 0, 2, 4, m).mul(&poch(1, 0, 2, 2, 4, m)),
                poch(1, 0, 0, 4, 4, m).mul(&poch(1, 0, -2, 4, 4, m)),
            )
            .mul(&qb);
            let jain_mid = ratio(poch(1, 1, 0, 3, 4, h).mul(&poch(1, -1, 0, 3, 4, h)), poch(1, 0, 0, 2, 2, n - 1));
            let jain = ratio(
                poch(1, 1, 1, 2, 4, m).mul(&poch(1, -1, 1, 2, 4, m)).mul(&poch(1, 1, -1, 2, 4, m)).mul(&poch(1, -1, -1, 2, 4, m)),
                poch(1, 0, 0, 2, 4, m).mul(&poch(1, 0, 0, 4, 4, m)).mul(&poch(1, 0, -2, 2, 4, m)).mul(&poch(1, 0, -2, 4, 4, m)),
            )
            .mul(&qb);
            let lhs = single(&d(), h);
            Built::Tasks(vec![
                ("Andrews".into(), Task::new(lhs.clone(), t(andrews)).roots(&a_roots(n))),
                ("Jain".into(), Task::new(lhs.clone(), t(jain_mid.clone())).roots(&[Root::b(n)])),
                ("Jain product".into(), Task::new(t(jain_mid), t(jain)).roots(&[Root::b(n)])),
            ])
        }
        "CRT-AB1" | "CRT-AB2" => {
            let amb = Factored::mono(1, 1, 0, 0).mul(&Factored::one_minus(1, -1, 1, 0));
            let den = amb.mul(&Factored::one_minus(1, 1, 1, 0));
            if id == "CRT-AB1" {
                let bmq = Factored::mono(1, 0, 1, 0).mul(&Factored::one_minus(1, 0, -1, n));
                let second = Expr::Sum(vec![
                    t(Factored::mono(1, 1, 1, 0)),
                    t(Factored::int(-1)),
                    t(Factored::mono(-1, 2, 0, 0)),
                    t(Factored::mono(1, 1, 0, n)),
                ]);
                one(Task::new(Expr::Prod(vec![t(ratio(bmq, den)), second]), t(Factored::one())).roots(&a_roots(n)))
            } else {
                let num = Factored::one_minus(1, 1, 0, n).mul(&Factored::mono(1, 1, 0, 0)).mul(&Factored::one_minus(1, -1, 0, n));
                one(Task::new(t(ratio(num, den)), t(Factored::one())).roots(&[Root::b(n)]))
            }
        }
        "CRT-REL" => {
            let lhs = Expr::Prod(vec![
                t(Factored::one_minus(1, 0, 1, 0)),
                Expr::Sum(vec![
                    t(Factored::one()),
                    t(Factored::mono(1, 2, 0, 0)),
                    t(Factored::mono(-1, 1, 0, 0)),
                    t(Factored::mono(-1, 1, 1, 0)),
                ]),
            ]);
            let amb = Factored::mono(1, 1, 0, 0).mul(&Factored::one_minus(1, -1, 1, 0));
            let rhs = Expr::Sum(vec![t(pw(Factored::one_minus(1, 1, 0, 0), 2)), t(Factored::one_minus(1, 1, 1, 0).mul(&amb))]);
            one(Task::identity(lhs, rhs).roots(&[Root::b(n)]))
        }
        "BG-Q4B" => {
            let rhs = Factored::int(jacobi(-3, un) as i64).mul(&q((1 - n) / 2)).mul(&qi(n));
            one(Task::new(single(&d(), h), t(rhs)).cyclo(parts(un, 1, 2)))
        }
        "BG-EL" => one(Task::new(conv(&d(), n), t(q(1).mul(&pw(qi(n), 2)))).cyclo(parts(un, 1, 2))),
        "BG-GW" => {
            let base = q((1 - n) / 2).mul(&qi(n));
            let rhs = Expr::Sum(vec![t(base.clone()), t(gw_coeff(n, 24).mul(&base).mul(&pw(qi(n), 2)))]);
            one(Task::new(single(&d(), h), rhs).cyclo(parts(un, 1, 3)))
        }
        "BG-RV" => one(Task::new(single(&d(), n - 1), t(Factored::int(sign(h)))).cyclo(parts(un, 2, 0))),
        "BG-MORE1" => one(Task::new(single(&d(), n - 1), t(Factored::int(sign(h)))).roots(&a_roots(n))),
        "BG-H1" => {
            let rhs = qi(n).mul(&ratio(poch(1, 0, 0, 3, 4, h), poch(1, 0, 0, 5, 4, h)));
            one(Task::new(single(&d(), h), t(rhs)).cyclo(vec![(un, if n1 { 2 } else { 3 })]))
        }
        "BG-H2" => {
            let rhs = Expr::Prod(vec![t(pw(big_a(n), 2).mul(&q(h))), harmonic_tail(n, 2, opts.inner_sum_start)]);
            one(Task::new(single(&d(), h), rhs).cyclo(vec![(un, 3)]))
        }
        "BG-A2INPUT" => {
            let rhs = if n1 { qi(n).mul(&pw(big_a(n), 2)) } else { Factored::zero() };
            one(Task::new(single(&d(), h), t(rhs)).cyclo(parts(un, 1, 2)))
        }
        "BG-GS-T8" => {
            let rhs = Expr::Prod(vec![t(q((1 - n) / 2).mul(&qi(n))), s_sum(n)]);
            one(Task::new(single(&d(), h), rhs).cyclo(parts(un, 1, 2)))
        }
        "CONJ2" => {
            let rhs = t(q((n - 1) * (n - 1) / 2).mul(&pw(qi(n), 2)));
            Built::Tasks(vec![
                ("A3".into(), Task::new(conv(&terms::a3(), n), rhs.clone()).cyclo(parts(un, 2, 0)).roots(&a_roots(n))),
                ("THM3".into(), Task::new(conv(&terms::thm3(), n), rhs).cyclo(parts(un, 2, 2))),
            ])
        }
        "CONJ3" => {
            let rhs = Expr::Sum(vec![t(q(1 - n).mul(&pw(qi(n), 2))), t(gw_coeff(n, 12).mul(&q(1)).mul(&pw(qi(n), 4)))]);
            one(Task::new(conv(&d(), n), rhs).cyclo(parts(un, 2, 3)))
        }
        "CONJ4" => Built::Tasks(vec![
            ("BG-MORE1".into(), Task::new(conv(&terms::more1(), n), t(Factored::one())).cyclo(vec![(un, 1)]).roots(&a_roots(n))),
            ("THM5".into(), Task::new(conv(&terms::thm5(), n), t(Factored::one())).cyclo(vec![(un, 3)])),
        ]),
        "CONJ5" => {
            need_dr(p)?;
            one(Task::new(conv(&d(), n), t(Factored::one())).cyclo(vec![(un, 2)]))
        }
        "CONJ5-PARAM" => {
            let (dd, r) = need_dr(p)?;
            let rho = frac_residue(-r, dd, n);
            let sigma = frac_residue(r - dd, dd, n);
            let roots = [Root::a(-(r + dd * rho)), Root::a(dd - r + dd * sigma)];
            let mut tasks =
                vec![("sum".to_string(), Task::new(single(&d(), n - 1), t(Factored::int(sign(rho)))).roots(&roots))];
            let near: Vec<Root> = [(rho, roots[0]), (sigma, roots[1])].iter().filter(|(x, _)| *x <= h).map(|x| x.1).collect();
            if !near.is_empty() {
                tasks.push(("double sum".into(), Task::new(conv(&d(), n), t(Factored::one())).cyclo(vec![(un, 1)]).roots(&near)));
            }
            Built::Tasks(tasks)
        }
        "CONJ7" => {
            let (rhs, phi) = if n1 { (pw(qi(n), 2).mul(&pw(big_a(n), 4)), 2) } else { (Factored::zero(), 4) };
            one(Task::new(conv(&d(), n), t(rhs)).cyclo(parts(un, 2, phi)))
        }
        "CONJ8" => {
            let s = s_sum(n);
            let inner = Expr::Sum(vec![t(pw(qi(n), 2)), t(gw_coeff(n, 12).mul(&pw(qi(n), 4)))]);
            let rhs = Expr::Prod(vec![t(q(1 - n)), inner, s.clone(), s]);
            one(Task::new(conv(&d(), n), rhs).cyclo(parts(un, 2, 3)))
        }
        _ => return Err(Error::UnknownId(id.into())),
    })
}

/// The right-hand side of the first task of `id`.
pub(super) fn rhs_expr(id: &str, p: &Params, opts: &Options) -> Result<Expr> {
    match build(id, p, opts)? {
        Built::Tasks(ts) => Ok(ts.into_iter().next().expect("at least one task").1.rhs),
        Built::Inapplicable(why) => Err(Error::Invalid(why)),
    }
}
