use num_traits::{One, Zero};
use proptest::prelude::*;
use qcongruence::arith::{subst_a_poly, Frac, Laurent, Poly};
use qcongruence::{BiPoly, Int, QLaurent, QPoly, QRat, Rat};

fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

fn qpoly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(rat(), 0..max_len).prop_map(Poly::new)
}

fn nonzero_qpoly(max_len: usize) -> impl Strategy<Value = QPoly> {
    qpoly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn qlaurent() -> impl Strategy<Value = QLaurent> {
    (-4i64..=4, qpoly(6)).prop_map(|(s, p)| Laurent::new(s, p))
}

fn bipoly() -> impl Strategy<Value = BiPoly> {
    (-2i64..=2, prop::collection::vec(qlaurent(), 0..4)).prop_map(|(s, cs)| Laurent::new(s, Poly::new(cs)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qpoly_ring_laws(a in qpoly(7), b in qpoly(7), c in qpoly(7)) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() + QPoly::zero(), a.clone());
        prop_assert_eq!(a.clone() * QPoly::one(), a.clone());
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn qlaurent_ring_laws(a in qlaurent(), b in qlaurent(), c in qlaurent()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + QLaurent::zero(), a.clone());
        prop_assert_eq!(a.clone() * QLaurent::one(), a.clone());
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn bipoly_ring_laws(a in bipoly(), b in bipoly(), c in bipoly()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * BiPoly::one(), a);
    }

    #[test]
    fn divrem_round_trip(f in qpoly(10), g in nonzero_qpoly(5)) {
        let (quo, rem) = f.divrem(&g).unwrap();
        prop_assert_eq!(g.clone() * quo + rem.clone(), f);
        match rem.degree() {
            None => {}
            Some(d) => prop_assert!(d < g.degree().unwrap()),
        }
    }

    #[test]
    fn gcd_divides_and_is_monic(a in nonzero_qpoly(5), b in nonzero_qpoly(5), c in nonzero_qpoly(4)) {
        let f = a * c.clone();
        let g = b * c;
        let h = f.gcd(&g);
        prop_assert!(f.rem(&h).unwrap().is_zero());
        prop_assert!(g.rem(&h).unwrap().is_zero());
        prop_assert!(h.leading().unwrap().is_one());
    }

    #[test]
    fn subst_a_is_a_homomorphism(f in bipoly(), g in bipoly(), h in bipoly(), e in -3i64..=3) {
        let lhs = subst_a_poly(&(f.clone() * g.clone() + h.clone()), e);
        prop_assert_eq!(lhs, subst_a_poly(&f, e) * subst_a_poly(&g, e) + subst_a_poly(&h, e));
    }

    // f = (a - q^n) g + c: divisible by (a - q^n) iff c = 0 iff the substitution vanishes
    #[test]
    fn substitution_matches_division(g in bipoly(), c in qlaurent(), n in 1i64..=5) {
        let lin = Laurent::monomial(QLaurent::one(), 1) - Laurent::constant(QLaurent::monomial(Rat::one(), n));
        let f = lin * g + Laurent::constant(c.clone());
        prop_assert_eq!(subst_a_poly(&f, n).is_zero(), c.is_zero());
    }

    #[test]
    fn qrat_inverse(a in qlaurent(), b in qlaurent()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let x = Frac::new(a.clone(), b.clone()).unwrap();
        let y = Frac::new(b, a).unwrap();
        prop_assert_eq!(x.clone() * y, QRat::one());
        prop_assert_eq!(x.clone(), x.clone());
        let twice = x.clone() + x.clone();
        prop_assert_eq!(twice - x.clone(), x);
    }
}
