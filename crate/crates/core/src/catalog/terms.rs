//! Summands as data: one interpreter builds every term of the registry.

use crate::qkit::Factored;

/// `(sign * a^a * b^b * q^q; q^step)_{len * k} ^ pow`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Poch {
    pub sign: i64,
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub step: i64,
    pub len: i64,
    pub pow: i64,
}

const fn p(a: i64, b: i64, q: i64, step: i64, pow: i64) -> Poch {
    Poch { sign: 1, a, b, q, step, len: 1, pow }
}

/// `(q^q; q^step)_k ^ pow`
const fn pq(q: i64, step: i64, pow: i64) -> Poch {
    p(0, 0, q, step, pow)
}

/// `(1 - sign * b^b * q^(q0 + qk * k)) ^ pow`
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KLin {
    pub sign: i64,
    pub b: i64,
    pub q0: i64,
    pub qk: i64,
    pub pow: i64,
}

/// `coeff * (-1)^(alt k) * [qa k + qb] * q^((c2 k^2 + c1 k + c0) / den) * b^(bk k)`
/// times the Pochhammer and linear factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermDesc {
    pub coeff: i64,
    pub alt: bool,
    pub qint: Option<(i64, i64)>,
    pub q_exp: [i64; 4],
    pub b_k: i64,
    pub pochs: Vec<Poch>,
    pub lins: Vec<KLin>,
}

impl Default for TermDesc {
    fn default() -> Self {
        TermDesc { coeff: 1, alt: false, qint: None, q_exp: [0, 0, 0, 1], b_k: 0, pochs: Vec::new(), lins: Vec::new() }
    }
}

impl TermDesc {
    pub fn at(&self, k: i64) -> Factored {
        let mut f = Factored::int(self.coeff);
        if self.alt && k % 2 == 1 {
            f = f.neg();
        }
        if let Some((x, y)) = self.qint {
            f = f.mul(&Factored::q_int(x * k + y));
        }
        let [c2, c1, c0, den] = self.q_exp;
        let num = c2 * k * k + c1 * k + c0;
        debug_assert_eq!(num % den, 0);
        f = f.mul(&Factored::mono(1, 0, self.b_k * k, num / den));
        for x in &self.pochs {
            let base = Factored::poch(x.sign, x.a, x.b, x.q, x.step, x.len * k);
            f = f.mul(&base.pow(x.pow).expect("Pochhammer factors of a summand are nonzero"));
        }
        for l in &self.lins {
            let base = Factored::one_minus(l.sign, 0, l.b, l.q0 + l.qk * k);
            f = f.mul(&base.pow(l.pow).expect("linear factors of a summand are nonzero"));
        }
        f
    }

    pub fn range(&self, upto: i64) -> Vec<Factored> {
        (0..=upto).map(|k| self.at(k)).collect()
    }
}

fn with_q2k(coeff: i64) -> TermDesc {
    TermDesc { coeff, q_exp: [0, 2, 0, 1], ..Default::default() }
}

/// `[3k+1] (q;q^2)^3 q^-binom(k+1,2) / ((q;q)^2 (q^2;q^2))`
pub fn thm1() -> TermDesc {
    TermDesc { qint: Some((3, 1)), q_exp: [-1, -1, 0, 2], pochs: vec![pq(1, 2, 3), pq(1, 1, -2), pq(2, 2, -1)], ..Default::default() }
}

/// `[3k+1] (aq, q/a, q; q^2) q^-binom(k+1,2) / ((aq, q/a; q) (q^2;q^2))`
pub fn a1() -> TermDesc {
    TermDesc {
        qint: Some((3, 1)),
        q_exp: [-1, -1, 0, 2],
        pochs: vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), pq(1, 2, 1), p(1, 0, 1, 1, -1), p(-1, 0, 1, 1, -1), pq(2, 2, -1)],
        ..Default::default()
    }
}

/// `(-1)^k [3k+1] (q;q^2)^3 / (q;q)^3`
pub fn thm2() -> TermDesc {
    TermDesc { alt: true, qint: Some((3, 1)), pochs: vec![pq(1, 2, 3), pq(1, 1, -3)], ..Default::default() }
}

/// `(-1)^k [3k+1] (aq, q/a, q; q^2) / (aq, q/a, q; q)`
pub fn a2() -> TermDesc {
    TermDesc {
        alt: true,
        qint: Some((3, 1)),
        pochs: vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), pq(1, 2, 1), p(1, 0, 1, 1, -1), p(-1, 0, 1, 1, -1), pq(1, 1, -1)],
        ..Default::default()
    }
}

/// `(-1)^k q^(k^2) [4k+1] (q;q^2)^3 / (q^2;q^2)^3`
pub fn thm3() -> TermDesc {
    TermDesc { alt: true, qint: Some((4, 1)), q_exp: [1, 0, 0, 1], pochs: vec![pq(1, 2, 3), pq(2, 2, -3)], ..Default::default() }
}

/// `(-1)^k q^(k^2) [4k+1] (aq, q/a, q; q^2) / (aq^2, q^2/a, q^2; q^2)`
pub fn a3() -> TermDesc {
    TermDesc {
        alt: true,
        qint: Some((4, 1)),
        q_exp: [1, 0, 0, 1],
        pochs: vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), pq(1, 2, 1), p(1, 0, 2, 2, -1), p(-1, 0, 2, 2, -1), pq(2, 2, -1)],
        ..Default::default()
    }
}

/// `[4k+1] (q;q^2)^4 / (q^2;q^2)^4`
pub fn thm4() -> TermDesc {
    TermDesc { qint: Some((4, 1)), pochs: vec![pq(1, 2, 4), pq(2, 2, -4)], ..Default::default() }
}

/// `[4k+1] (aq, q/a; q^2) (q;q^2)^2 / ((aq^2, q^2/a; q^2) (q^2;q^2)^2)`
pub fn a4() -> TermDesc {
    TermDesc {
        qint: Some((4, 1)),
        pochs: vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), pq(1, 2, 2), p(1, 0, 2, 2, -1), p(-1, 0, 2, 2, -1), pq(2, 2, -2)],
        ..Default::default()
    }
}

/// `2 (q;q^2)^2 q^(2k) / ((q^2;q^2)^2 (1 + q^(2k)))`
pub fn thm5() -> TermDesc {
    let mut t = with_q2k(2);
    t.pochs = vec![pq(1, 2, 2), pq(2, 2, -2)];
    t.lins = vec![KLin { sign: -1, b: 0, q0: 0, qk: 2, pow: -1 }];
    t
}

/// `2 (aq, q/a; q^2) q^(2k) / ((q^2;q^2)^2 (1 + q^(2k)))`
pub fn more1() -> TermDesc {
    let mut t = with_q2k(2);
    t.pochs = vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), pq(2, 2, -2)];
    t.lins = vec![KLin { sign: -1, b: 0, q0: 0, qk: 2, pow: -1 }];
    t
}

/// `(q;q^2)^2 (q^2;q^4) q^(2k) / ((q^2;q^2)^2 (q^4;q^4))`
pub fn thm6() -> TermDesc {
    let mut t = with_q2k(1);
    t.pochs = vec![pq(1, 2, 2), pq(2, 4, 1), pq(2, 2, -2), pq(4, 4, -1)];
    t
}

/// `(-1)^k [4k+1] (q;q^2)^4 (q^2;q^4) q^k / ((q^2;q^2)^4 (q^4;q^4))`
pub fn thm7() -> TermDesc {
    TermDesc {
        alt: true,
        qint: Some((4, 1)),
        q_exp: [0, 1, 0, 1],
        pochs: vec![pq(1, 2, 4), pq(2, 4, 1), pq(2, 2, -4), pq(4, 4, -1)],
        ..Default::default()
    }
}

/// `[4k+1] (q;q^2)^6 q^k / (q^2;q^2)^6`
pub fn thm8() -> TermDesc {
    TermDesc { qint: Some((4, 1)), q_exp: [0, 1, 0, 1], pochs: vec![pq(1, 2, 6), pq(2, 2, -6)], ..Default::default() }
}

/// `(q;q^2)^4 q^(2k) / (q^2;q^2)^4`
pub fn thm8_inner() -> TermDesc {
    TermDesc { q_exp: [0, 2, 0, 1], pochs: vec![pq(1, 2, 4), pq(2, 2, -4)], ..Default::default() }
}

/// `[8k+1] (q;q^2)_k^2 (q;q^2)_2k q^(2k^2) / ((q^2;q^2)_2k (q^6;q^6)_k^2)`
pub fn q4b() -> TermDesc {
    TermDesc {
        qint: Some((8, 1)),
        q_exp: [2, 0, 0, 1],
        pochs: vec![
            pq(1, 2, 2),
            Poch { len: 2, ..pq(1, 2, 1) },
            Poch { len: 2, ..pq(2, 2, -1) },
            pq(6, 6, -2),
        ],
        ..Default::default()
    }
}

/// `(-1)^k [4k+1] (aq, q/a, q/b; q^2) b^k q^(k^2) / (aq^2, q^2/a, bq^2; q^2)`
pub fn false_z() -> TermDesc {
    TermDesc {
        alt: true,
        qint: Some((4, 1)),
        q_exp: [1, 0, 0, 1],
        b_k: 1,
        pochs: vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), p(0, -1, 1, 2, 1), p(1, 0, 2, 2, -1), p(-1, 0, 2, 2, -1), p(0, 1, 2, 2, -1)],
        ..Default::default()
    }
}

/// `(1 - b) (aq, q/a; q^2) q^k / ((1 - b q^(2k)) (q, q^2; q^2))`
pub fn false1_rhs() -> TermDesc {
    TermDesc {
        q_exp: [0, 1, 0, 1],
        pochs: vec![p(1, 0, 1, 2, 1), p(-1, 0, 1, 2, 1), pq(1, 2, -1), pq(2, 2, -1)],
        lins: vec![KLin { sign: 1, b: 1, q0: 0, qk: 0, pow: 1 }, KLin { sign: 1, b: 1, q0: 0, qk: 2, pow: -1 }],
        ..Default::default()
    }
}

/// `(q, q/b; q^2) b^k / (aq^2, q^2/a; q^2)`
pub fn false2_rhs() -> TermDesc {
    TermDesc { b_k: 1, pochs: vec![pq(1, 2, 1), p(0, -1, 1, 2, 1), p(1, 0, 2, 2, -1), p(-1, 0, 2, 2, -1)], ..Default::default() }
}

/// `[4k+1] (aq, q/a, q/b, q; q^2) b^k / (aq^2, q^2/a, bq^2, q^2; q^2)`
pub fn long_z() -> TermDesc {
    TermDesc {
        qint: Some((4, 1)),
        b_k: 1,
        pochs: vec![
            p(1, 0, 1, 2, 1),
            p(-1, 0, 1, 2, 1),
            p(0, -1, 1, 2, 1),
            pq(1, 2, 1),
            p(1, 0, 2, 2, -1),
            p(-1, 0, 2, 2, -1),
            p(0, 1, 2, 2, -1),
            pq(2, 2, -1),
        ],
        ..Default::default()
    }
}

/// `(aq, q/a, q/b, -q/b; q^2) q^(2k) / (q^2, q^2, -q^2, q^2/b^2; q^2)`
pub fn whipple_z() -> TermDesc {
    TermDesc {
        q_exp: [0, 2, 0, 1],
        pochs: vec![
            p(1, 0, 1, 2, 1),
            p(-1, 0, 1, 2, 1),
            p(0, -1, 1, 2, 1),
            Poch { sign: -1, ..p(0, -1, 1, 2, 1) },
            pq(2, 2, -2),
            Poch { sign: -1, ..pq(2, 2, -1) },
            p(0, -2, 2, 2, -1),
        ],
        ..Default::default()
    }
}

/// `2 (q^r;q^d) (q^(d-r);q^d) q^(e d k) / ((q^d;q^d)^2 (1 + q^(dk)))` with `e` the
/// exponent multiplier of the `q`-power.
pub fn conj5(d: i64, r: i64, e: i64) -> TermDesc {
    TermDesc {
        coeff: 2,
        q_exp: [0, e * d, 0, 1],
        pochs: vec![pq(r, d, 1), pq(d - r, d, 1), pq(d, d, -2)],
        lins: vec![KLin { sign: -1, b: 0, q0: 0, qk: d, pow: -1 }],
        ..Default::default()
    }
}

/// `2 (aq^r;q^d) (q^(d-r)/a;q^d) q^(dk) / ((q^d;q^d)^2 (1 + q^(dk)))`
pub fn conj5_param(d: i64, r: i64) -> TermDesc {
    TermDesc {
        coeff: 2,
        q_exp: [0, d, 0, 1],
        pochs: vec![p(1, 0, r, d, 1), p(-1, 0, d - r, d, 1), pq(d, d, -2)],
        lins: vec![KLin { sign: -1, b: 0, q0: 0, qk: d, pow: -1 }],
        ..Default::default()
    }
}
