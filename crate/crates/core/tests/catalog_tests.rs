use num_traits::One;
use qcongruence::arith::{Frac, Laurent, Poly, Ring};
use qcongruence::catalog::{self, check_entry, check_instance, instances, param_term, q1_cross_check, rhs, term, Options, Params};
use qcongruence::congruence::{check_rat_congruence, conv_sum, Status, Strategy};
use qcongruence::padic::jacobi;
use qcongruence::qkit::{cyclotomic, q_int, q_pochhammer, Monomial};
use qcongruence::{BiPoly, Int, QLaurent, QPoly, QRat, Rat};

fn ql(shift: i64, cs: &[i64]) -> QLaurent {
    Laurent::new(shift, QPoly::from_i64s(cs))
}

fn qr(num: QLaurent, den: QLaurent) -> QRat {
    Frac::new(num, den).unwrap()
}

fn bracket(n: i64) -> QLaurent {
    QLaurent::from_poly(q_int(n).unwrap())
}

/// `(q^e; q^step)_k` with no `a`.
fn poch(e: i64, step: i64, k: usize) -> QLaurent {
    let b = q_pochhammer(&Monomial::new(1, 0, e), step, k);
    b.coeff(0)
}

// c(k) of the first theorem, written out from the Pochhammer symbols
fn thm1_oracle(k: i64) -> QRat {
    let ku = k as usize;
    let num = bracket(3 * k + 1) * poch(1, 2, ku).pow_u32(3) * QLaurent::monomial(Rat::one(), -k * (k + 1) / 2);
    let den = poch(1, 1, ku).pow_u32(2) * poch(2, 2, ku);
    qr(num, den)
}

#[test]
fn term_examples() {
    assert_eq!(term("THM1", 7, 0).unwrap(), QRat::one());
    assert_eq!(term("THM1", 5, 1).unwrap(), QRat::from_num(ql(-1, &[1, 0, 1])));
    let thm3 = qr(
        -(QLaurent::monomial(Rat::one(), 1) * bracket(5) * ql(0, &[1, -1]).pow_u32(3)),
        ql(0, &[1, 0, -1]).pow_u32(3),
    );
    assert_eq!(term("THM3", 9, 1).unwrap(), thm3);
    for n in [3, 5, 7, 9] {
        for k in 0..n as i64 {
            assert_eq!(term("THM1", n, k).unwrap(), thm1_oracle(k), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn param_term_examples() {
    assert_eq!(param_term("A1", 5, 0).unwrap(), Frac::one());
    // (-q)[5](1-aq)(1-q/a)(1-q)/((1-aq^2)(1-q^2/a)(1-q^2))
    let a = |c: i64, ae: i64, qe: i64| -> BiPoly { Laurent::monomial(QLaurent::monomial(Rat::from_integer(Int::from(c)), qe), ae) };
    let one = BiPoly::one();
    let num = a(-1, 0, 1)
        * Laurent::constant(bracket(5))
        * (one.clone() - a(1, 1, 1))
        * (one.clone() - a(1, -1, 1))
        * (one.clone() - a(1, 0, 1));
    let den = (one.clone() - a(1, 1, 2)) * (one.clone() - a(1, -1, 2)) * (one - a(1, 0, 2));
    assert_eq!(param_term("A3", 7, 1).unwrap(), Frac::new(num, den).unwrap());
}

#[test]
fn rhs_examples() {
    let b3 = ql(0, &[1, 1, 1]);
    assert_eq!(rhs("THM1", 3).unwrap(), QRat::from_num(QLaurent::monomial(Rat::one(), 1) * b3.clone() * b3));
    let b5 = bracket(5);
    assert_eq!(rhs("THM2", 5).unwrap(), QRat::from_num(QLaurent::monomial(Rat::one(), 3) * b5.clone() * b5));
    assert!(rhs("THM6", 3).unwrap().is_zero());
    assert!(rhs("THM6", 2).is_err());
}

#[test]
fn thm1_at_three_by_hand() {
    let cs: Vec<QRat> = (0..3).map(thm1_oracle).collect();
    let lhs = conv_sum(&cs, 3);
    let phi3 = cyclotomic(3);
    let m = phi3.clone() * phi3.clone() * phi3;
    assert!(check_rat_congruence(&lhs, &rhs("THM1", 3).unwrap(), &m).is_pass());
    let q2 = rhs("THM1", 3).unwrap() * QRat::from_num(QLaurent::monomial(Rat::one(), 1));
    assert_eq!(check_rat_congruence(&lhs, &q2, &m).status, Status::Fail);
}

#[test]
fn entry_examples() {
    let v = check_entry("THM1", 9, Strategy::Both).unwrap();
    assert!(v.is_pass(), "{}", v.detail);
    assert!(v.detail.contains("Phi_3") && v.detail.contains("Phi_9^3"));
    assert!(check_entry("THM1", 5, Strategy::Exact).unwrap().is_pass());
    assert!(check_entry("LEM-A1", 7, Strategy::Exact).unwrap().is_pass());
    assert!(check_entry("A1", 5, Strategy::Both).unwrap().is_pass());
    assert!(check_entry("A3", 3, Strategy::Both).unwrap().is_pass());
    assert!(check_entry("CONJ7", 7, Strategy::Both).unwrap().is_pass());
    assert_eq!(check_entry("THM6", 8, Strategy::Modular).unwrap().status, Status::Inapplicable);
    for e in catalog::registry() {
        assert_eq!(check_entry(e.id, 1, Strategy::Modular).unwrap().status, Status::Inapplicable, "{}", e.id);
    }
}

#[test]
fn specialization_coherence() {
    for (pid, id) in [("A1", "THM1"), ("A2", "THM2"), ("A3", "THM3"), ("A4", "THM4"), ("BG-MORE1", "THM5")] {
        for n in (3..=9u64).step_by(2) {
            for k in 0..n as i64 {
                let at_one = param_term(pid, n, k).unwrap().subst_a(0).unwrap();
                assert_eq!(at_one, term(id, n, k).unwrap(), "{pid} n = {n}, k = {k}");
            }
        }
    }
}

#[test]
fn single_sum_inputs() {
    for id in ["GUO1", "GUO2", "FALSE2", "QLONG1", "QLONG2", "BG-MORE1"] {
        for n in (3..=13).step_by(2) {
            let v = check_entry(id, n, Strategy::Modular).unwrap();
            assert!(v.is_pass(), "{id} n = {n}: {}", v.detail);
        }
    }
    for n in [3, 5, 7, 11, 13] {
        assert!(check_entry("FALSE1", n, Strategy::Modular).unwrap().is_pass(), "FALSE1 n = {n}");
    }
    // at composite n the right side carries (q^3;q^2) denominators meeting Phi_3
    let v = check_entry("FALSE1", 9, Strategy::Modular).unwrap();
    assert_eq!(v.status, Status::Error);
    assert!(v.detail.contains("modulus meets denominator"), "{}", v.detail);
}

#[test]
fn tails_vanish_at_a_roots() {
    for id in ["A1", "A2", "A3", "A4"] {
        for n in (3..=11u64).step_by(2) {
            let ni = n as i64;
            for k in (ni + 1) / 2..ni {
                let t = param_term(id, n, k).unwrap();
                assert!(t.subst_a(ni).unwrap().is_zero(), "{id} n = {n}, k = {k}, a = q^n");
                assert!(t.subst_a(-ni).unwrap().is_zero(), "{id} n = {n}, k = {k}, a = q^-n");
            }
            assert!(!param_term(id, n, (ni - 1) / 2).unwrap().subst_a(ni).unwrap().is_zero());
        }
    }
}

#[test]
fn exponent_identity() {
    for n in (1..=99i64).step_by(2) {
        assert_eq!(((n - 1) * (n - 1) / 2).rem_euclid(n), ((n + 1) / 2).rem_euclid(n), "n = {n}");
    }
}

#[test]
fn q_to_one_limits() {
    for p in [3u64, 5, 7] {
        for k in 0..=3.min(p as i64 - 1) {
            assert!(q1_cross_check("THM1", p, k).unwrap(), "THM1 p = {p}, k = {k}");
            assert!(q1_cross_check("THM2", p, k).unwrap(), "THM2 p = {p}, k = {k}");
        }
    }
    assert_eq!(term("THM1", 5, 1).unwrap().eval_limit_q1().unwrap(), Rat::from_integer(2.into()));
    assert_eq!(term("THM2", 5, 1).unwrap().eval_limit_q1().unwrap(), Rat::from_integer((-4).into()));
    assert!(q1_cross_check("THM3", 5, 1).is_err());
}

// (1-t)(1+a^2-a-at) = (1-a)^2 + (1-at)(a-t) with t an indeterminate (the inner variable)
#[test]
fn crt_relation_with_free_t() {
    let m = |c: i64, ae: i64, te: i64| -> BiPoly { Laurent::monomial(QLaurent::monomial(Rat::from_integer(Int::from(c)), te), ae) };
    let one = BiPoly::one();
    let lhs = (one.clone() - m(1, 0, 1)) * (one.clone() + m(1, 2, 0) - m(1, 1, 0) - m(1, 1, 1));
    let oma = one.clone() - m(1, 1, 0);
    let rhs = oma.clone() * oma + (one - m(1, 1, 1)) * (m(1, 1, 0) - m(1, 0, 1));
    assert_eq!(lhs, rhs);
    for n in (3..=25).step_by(2) {
        assert!(check_entry("CRT-REL", n, Strategy::Exact).unwrap().is_pass());
    }
}

#[test]
fn q4b_jacobi_factor() {
    for p in [5u64, 7, 11, 13, 17, 19, 23] {
        let pi = p as i64;
        let base = QRat::from_num(QLaurent::monomial(Rat::one(), (1 - pi) / 2) * bracket(pi));
        let sign = rhs("BG-Q4B", p).unwrap().div(&base).unwrap();
        let expected = if p % 3 == 1 { 1 } else { -1 };
        assert_eq!(jacobi(-3, p), expected);
        assert_eq!(sign, QRat::from_num(QLaurent::constant(Rat::from_integer(expected.into()))), "p = {p}");
        assert!(check_entry("BG-Q4B", p, Strategy::Modular).unwrap().is_pass());
    }
}

#[test]
fn inner_sum_start_is_frozen_at_one() {
    let k0 = Options { inner_sum_start: 0, ..Options::default() };
    for n in [5u64, 9, 13] {
        for id in ["THM6", "BG-H2"] {
            assert!(check_entry(id, n, Strategy::Modular).unwrap().is_pass(), "{id} n = {n}");
            let v = check_instance(id, &Params::n(n), Strategy::Modular, &k0).unwrap();
            assert_eq!(v.status, Status::Fail, "{id} n = {n} with k0 = 0");
        }
    }
    for n in [3u64, 7, 11] {
        assert!(check_entry("THM6", n, Strategy::Modular).unwrap().is_pass(), "THM6 n = {n}");
    }
}

#[test]
fn conj5_exponent_multiplier() {
    let doubled = Options { conj5_q_multiplier: 2, ..Options::default() };
    for n in [5u64, 7, 9] {
        assert!(check_entry("CONJ5", n, Strategy::Modular).unwrap().is_pass());
        let any_fail = instances("CONJ5", n)
            .unwrap()
            .iter()
            .any(|p| check_instance("CONJ5", p, Strategy::Modular, &doubled).unwrap().status == Status::Fail);
        assert!(any_fail, "n = {n}");
    }
}

#[test]
fn pochhammer_poly_helper_is_sane() {
    assert_eq!(poch(1, 2, 2), QLaurent::from_poly(Poly::from_i64s(&[1, -1]) * Poly::from_i64s(&[1, 0, 0, -1])));
}
