//! Property tests for the series kernel: ring axioms under truncation,
//! inversion round-trips, rescaling as a homomorphism, dissection as a
//! partition, and the geometric-factor contract.

use num::Zero;
use proptest::prelude::*;
use qdual_core::{coeff_int, geometric_factor, Coeff, QSeries};

fn arb_coeff() -> impl Strategy<Value = Coeff> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Coeff::new(n.into(), d.into()))
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    (
        8i64..16,
        prop::collection::vec((-5i64..10, arb_coeff()), 0..8),
    )
        .prop_map(|(order, terms)| QSeries::from_num_terms(1, terms, order))
}

fn arb_unit_series() -> impl Strategy<Value = QSeries> {
    // valuation exactly v with a nonzero leading coefficient
    (
        10i64..16,
        -3i64..3,
        (1i64..5).prop_map(coeff_int),
        prop::collection::vec((1i64..8, arb_coeff()), 0..6),
    )
        .prop_map(|(order, v, lead, rest)| {
            let mut s = QSeries::monomial_num(1, lead, v, order);
            for (off, c) in rest {
                s.add_term_num(v + off, c);
            }
            s
        })
}

fn assert_agree(a: &QSeries, b: &QSeries) {
    let o = a.order_num().min(b.order_num());
    assert!(
        a.equal_to_order(b, o).unwrap(),
        "series disagree below q^{o}:\n  {a}\n  {b}"
    );
}

proptest! {
    #[test]
    fn add_commutes(f in arb_series(), g in arb_series()) {
        assert_agree(&f.add(&g).unwrap(), &g.add(&f).unwrap());
    }

    #[test]
    fn mul_commutes(f in arb_series(), g in arb_series()) {
        assert_agree(&f.mul(&g).unwrap(), &g.mul(&f).unwrap());
    }

    #[test]
    fn mul_associates(f in arb_series(), g in arb_series(), h in arb_series()) {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        assert_agree(&left, &right);
    }

    #[test]
    fn mul_distributes(f in arb_series(), g in arb_series(), h in arb_series()) {
        let left = f.mul(&g.add(&h).unwrap()).unwrap();
        let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        assert_agree(&left, &right);
    }

    #[test]
    fn sub_self_is_zero(f in arb_series()) {
        let d = f.sub(&f).unwrap();
        prop_assert!(d.is_zero());
    }

    #[test]
    fn invert_roundtrips(f in arb_unit_series()) {
        let g = f.invert().unwrap();
        let prod = f.mul(&g).unwrap();
        let o = prod.order_num();
        prop_assert!(o > 0);
        prop_assert!(prod.equal_to_order(&QSeries::one(1, o), o).unwrap());
    }

    #[test]
    fn invert_is_involutive(f in arb_unit_series()) {
        let back = f.invert().unwrap().invert().unwrap();
        assert_agree(&f, &back);
    }

    #[test]
    fn rescale_is_multiplicative(f in arb_series(), g in arb_series(), r in 1i64..4) {
        let r = qdual_core::Exp::from_integer(r);
        let left = f.mul(&g).unwrap().rescale(r).unwrap();
        let right = f.rescale(r).unwrap().mul(&g.rescale(r).unwrap()).unwrap();
        assert_agree(&left, &right);
    }

    #[test]
    fn dissect_partitions(f in arb_series(), m in 1i64..6) {
        let mut sum = QSeries::zero(1, f.order_num());
        for t in 0..m {
            sum = sum.add(&f.dissect(m, t)).unwrap();
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn geometric_factor_inverts_binomial(
        n in -4i64..5,
        d in 1i64..4,
        k in -4i64..5,
        order in 6i64..14,
    ) {
        let u = Coeff::new(n.into(), d.into());
        prop_assume!(!u.is_zero());
        prop_assume!(!(k == 0 && u == Coeff::from_integer(1.into())));
        let g = geometric_factor(1, &u, k, order).unwrap();
        let prod = g.mul_binomial_num(&u, k);
        let o = prod.order_num();
        prop_assert!(prod.equal_to_order(&QSeries::one(1, o), o).unwrap());
    }

    #[test]
    fn truncate_forgets(f in arb_series(), cut in 0i64..8) {
        let o = f.order_num() - cut;
        let t = f.truncate_num(o);
        prop_assert_eq!(t.order_num(), o.min(f.order_num()));
        prop_assert!(t.equal_to_order(&f, t.order_num()).unwrap());
    }
}
