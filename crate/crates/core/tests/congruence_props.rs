use num_traits::{One, Zero};
use proptest::prelude::*;
use qcongruence::arith::{Frac, Laurent, Poly};
use qcongruence::catalog::{self, build, instances, Built, Options};
use qcongruence::congruence::{check_param_congruence, check_task, conv_sum, zero_lemma_check, Expr, Status, Strategy as Pipe};
use qcongruence::qkit::{q_pochhammer, Factored, ModulusSpec, Monomial};
use qcongruence::{ARat, Int, QLaurent, QPoly, QRat, Rat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ql(shift: i64, cs: Vec<i64>) -> QLaurent {
    Laurent::new(shift, QPoly::from_i64s(&cs))
}

fn random_qrat(rng: &mut StdRng) -> QRat {
    let num = ql(rng.gen_range(-3..=3), (0..rng.gen_range(1..4)).map(|_| rng.gen_range(-4..=4)).collect());
    let mut den = ql(0, (0..rng.gen_range(1..3)).map(|_| rng.gen_range(-3..=3)).collect());
    if den.is_zero() {
        den = QLaurent::one();
    }
    Frac::new(num, den).unwrap()
}

fn qrat_strategy() -> impl Strategy<Value = QRat> {
    (-3i64..=3, prop::collection::vec(-4i64..=4, 1..4), prop::collection::vec(-3i64..=3, 1..3)).prop_map(|(s, n, d)| {
        let den = ql(0, d);
        let den = if den.is_zero() { QLaurent::one() } else { den };
        Frac::new(ql(s, n), den).unwrap()
    })
}

fn total(cs: &[QRat]) -> QRat {
    cs.iter().cloned().fold(QRat::zero(), |a, b| a + b)
}

/// `sum_{j=0}^{m} c(j) c(m-j)`
fn conv_at(c: &[QRat], m: usize) -> QRat {
    (0..=m).fold(QRat::zero(), |acc, j| acc + c[j].clone() * c[m - j].clone())
}

#[test]
fn conv_sum_examples() {
    let c = |v: i64| QRat::from_num(QLaurent::constant(Rat::from_integer(Int::from(v))));
    assert_eq!(conv_sum(&[c(7)], 1), c(49));
    assert_eq!(conv_sum(&[c(1), c(1)], 2), c(3));
    assert_eq!(conv_sum(&[c(1), c(2), c(0)], 3), c(9));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // zero tail: truncated convolution square equals the square of the sum
    #[test]
    fn lemma_one_zero_tail(head in prop::collection::vec(qrat_strategy(), 1..=6), d_extra in 0usize..=1) {
        let d = 2 * head.len() - 1 + d_extra;
        let mut c = head.clone();
        c.resize(d, QRat::zero());
        let s = total(&c);
        prop_assert_eq!(conv_sum(&c, d), s.clone() * s);
    }

    // c(ld+k) = c(ld) c(k) with a zero tail in each block
    #[test]
    fn lemma_one_block_factorization(half in prop::collection::vec(qrat_strategy(), 0..=3),
                                     blocks in prop::collection::vec(qrat_strategy(), 1..=3)) {
        let mut base = vec![QRat::one()];
        base.extend(half);
        let d = 2 * base.len() - 1;
        base.resize(d, QRat::zero());
        let mut gamma = vec![QRat::one()];
        gamma.extend(blocks);
        let c: Vec<QRat> = gamma.iter().flat_map(|g| base.iter().map(move |b| g.clone() * b.clone())).collect();
        for l in 0..gamma.len() {
            for k in 0..d {
                let lhs = conv_at(&c, l * d + k);
                let outer = (0..=l).fold(QRat::zero(), |acc, i| acc + c[i * d].clone() * c[(l - i) * d].clone());
                prop_assert_eq!(lhs, outer * conv_at(&c, k), "l = {}, k = {}", l, k);
            }
        }
    }
}

fn antisymmetric(n: usize, rng: &mut StdRng) -> Vec<QRat> {
    let h = (n - 1) / 2;
    let mut a = vec![QRat::zero(); n];
    for k in 0..=h {
        let p = h - k;
        if k < p {
            let x = random_qrat(rng);
            a[p] = -x.clone();
            a[k] = x;
        }
    }
    for k in h + 1..n {
        let p = (3 * n - 1) / 2 - k;
        if k < p {
            let x = random_qrat(rng);
            a[p] = -x.clone();
            a[k] = x;
        }
    }
    a
}

#[test]
fn zero_lemma_on_random_sequences() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for n in [3usize, 5, 7, 9, 11] {
        for _ in 0..200 {
            let seq = antisymmetric(n, &mut rng);
            assert_eq!(zero_lemma_check(&seq, n), Ok(true), "n = {n}");
        }
    }
}

#[test]
fn zero_lemma_rejects_broken_hypothesis() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut seq = antisymmetric(7, &mut rng);
    seq[0] = seq[0].clone() + QRat::one();
    assert!(zero_lemma_check(&seq, 7).is_err());
    assert!(zero_lemma_check(&seq[..6], 6).is_err());
}

fn poch(c: i64, ae: i64, qe: i64, step: i64, k: usize) -> ARat {
    Frac::from_num(q_pochhammer(&Monomial::new(c, ae, qe), step, k))
}

fn mono(c: i64, ae: i64, qe: i64) -> ARat {
    Frac::from_num(Laurent::monomial(QLaurent::monomial(Rat::from_integer(Int::from(c)), qe), ae))
}

// (aq;q^2)_{h-k}/(q^2/a;q^2)_{h-k} ≡ (-a)^{h-2k} (aq;q^2)_k/(q^2/a;q^2)_k q^{h^2+k} mod Phi_n
#[test]
fn symmetry_congruence_mod_phi_n() {
    for n in (3..=11u64).step_by(2) {
        let h = ((n - 1) / 2) as i64;
        for k in 0..=h {
            let r = |j: i64| poch(1, 1, 1, 2, j as usize).div(&poch(1, -1, 2, 2, j as usize)).unwrap();
            let lhs = r(h - k);
            let sign = if (h - 2 * k).rem_euclid(2) == 0 { 1 } else { -1 };
            let rhs = mono(sign, h - 2 * k, h * h + k) * r(k);
            let v = check_param_congruence(&lhs, &rhs, &ModulusSpec::new(n, 0, 1));
            assert_eq!(v.status, Status::Pass, "n = {n}, k = {k}: {}", v.detail);
            let off = check_param_congruence(&lhs, &(rhs * mono(1, 0, 1)), &ModulusSpec::new(n, 0, 1));
            assert_eq!(off.status, Status::Fail, "n = {n}, k = {k}");
        }
        assert!(catalog::check_entry("GS-SYM", n, Pipe::Modular).unwrap().is_pass());
    }
}

#[test]
fn param_check_accepts_constructed_multiple() {
    let n = 5;
    let bracket: ARat = Frac::from_num(Laurent::constant(QLaurent::from_poly(Poly::new(vec![Rat::one(); 5]))));
    let lin1 = mono(1, 0, 0) - mono(1, 1, n);
    let lin2 = mono(1, 1, 0) - mono(1, 0, n);
    let g = mono(3, 2, -1) + mono(-1, 0, 4) + mono(2, -1, 0);
    let lhs = mono(1, 1, 1) + bracket * lin1 * lin2 * g;
    let spec = ModulusSpec::new(n as u64, 1, 0).with_params(&[
        qcongruence::qkit::ParamFactor::OneMinusAqn,
        qcongruence::qkit::ParamFactor::AMinusQn,
    ]);
    assert!(check_param_congruence(&lhs, &mono(1, 1, 1), &spec).is_pass());
    assert_eq!(check_param_congruence(&lhs, &mono(1, 1, 2), &spec).status, Status::Fail);
}

// Multiplying every right side by q must break each entry somewhere in 3 <= n <= 9.
#[test]
fn mutation_sensitivity() {
    let q = Expr::Term(Factored::q_pow(1));
    let mut untouched = Vec::new();
    for e in catalog::registry() {
        let mut flipped = false;
        'n: for n in (3..=9u64).step_by(2) {
            if e.predicate.check(&catalog::Params::n(n)).is_some() {
                continue;
            }
            for p in instances(e.id, n).unwrap() {
                let Built::Tasks(tasks) = build(e.id, &p, &Options::default()).unwrap() else { continue };
                for (_, mut t) in tasks {
                    t.rhs = Expr::Prod(vec![t.rhs.clone(), q.clone()]);
                    if check_task(&t, Pipe::Modular).status != Status::Pass {
                        flipped = true;
                        break 'n;
                    }
                }
            }
        }
        if !flipped {
            untouched.push(e.id);
        }
    }
    assert!(untouched.is_empty(), "mutation left these passing: {untouched:?}");
}
