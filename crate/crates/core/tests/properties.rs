//! Randomized algebraic laws for the exact kernel: ring axioms, exact
//! division, substitution/evaluation compatibility, serialization, index
//! round-trips, grading, and stability of the quotient-ring rewriting.

use lgschub::index::{mask_to_strict, strict_to_mask, BitMask};
use lgschub::poly::{Monomial, Poly, Rat, VarId};
use lgschub::presentation::{normal_form, XMonomial, XPoly};
use lgschub::qfun::{Alphabet, QTables};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    (
        proptest::collection::vec(0u32..3, 3),
        proptest::collection::vec(0u32..3, 2),
    )
        .prop_map(|(xs, ays)| {
            let mut pairs = Vec::new();
            for (i, e) in xs.into_iter().enumerate() {
                if e > 0 {
                    pairs.push((VarId::x(i as u32 + 1), e));
                }
            }
            // Shift parameters start at index 2: a_1 is identically zero.
            for (j, e) in ays.into_iter().enumerate() {
                if e > 0 {
                    pairs.push((VarId::a(j as u32 + 2), e));
                }
            }
            Monomial::from_pairs(pairs)
        })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((arb_monomial(), -9i64..10), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &BigInt::from(c));
        }
        p
    })
}

/// A rational point covering every variable the polynomials above use.
fn arb_point() -> impl Strategy<Value = BTreeMap<VarId, Rat>> {
    proptest::collection::vec(-6i64..7, 5).prop_map(|vals| {
        let mut pt = BTreeMap::new();
        for (i, v) in vals.iter().take(3).enumerate() {
            pt.insert(VarId::x(i as u32 + 1), Rat::from_integer(BigInt::from(*v)));
        }
        for (j, v) in vals.iter().skip(3).enumerate() {
            pt.insert(VarId::a(j as u32 + 2), Rat::from_integer(BigInt::from(*v)));
        }
        pt
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &Poly::zero(), p.clone());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p + &(-&p), Poly::zero());
    }

    #[test]
    fn exact_division_recovers_the_factor(p in arb_poly(), q in arb_poly()) {
        prop_assume!(!q.is_zero());
        let product = &p * &q;
        prop_assert_eq!(product.exact_div(&q).unwrap(), p);
    }

    #[test]
    fn scaling_matches_constant_multiplication(p in arb_poly(), c in -9i64..10) {
        prop_assert_eq!(p.scale(&BigInt::from(c)), &p * &Poly::int(c));
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        p in arb_poly(),
        r in arb_poly(),
        pt in arb_point(),
    ) {
        // Replace x_1 by the polynomial r, then evaluate; this must agree
        // with evaluating p directly at the point whose x_1-coordinate is
        // the value of r.
        let mut map = BTreeMap::new();
        map.insert(VarId::x(1), r.clone());
        let substituted = p.substitute(&map).eval(&pt);
        let mut moved = pt.clone();
        moved.insert(VarId::x(1), r.eval(&pt));
        prop_assert_eq!(substituted, p.eval(&moved));
    }

    #[test]
    fn evaluation_is_a_ring_map(p in arb_poly(), q in arb_poly(), pt in arb_point()) {
        prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
    }

    #[test]
    fn json_round_trip(p in arb_poly()) {
        let encoded = p.to_json();
        let text = serde_json::to_string(&encoded).unwrap();
        let decoded: lgschub::poly::PolyJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(Poly::from_json(&decoded).unwrap(), p);
    }

    #[test]
    fn bit_masks_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..=8)) {
        let mask = BitMask::new(bits.clone());
        let lam = mask_to_strict(&mask);
        let back = strict_to_mask(&lam, bits.len() as u32).unwrap();
        prop_assert_eq!(mask.bits(), back.bits());
    }
}

/// Strict shapes of order at most 4, drawn by thinning the full staircase.
fn arb_shape() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(any::<bool>(), 4)
        .prop_map(|keep| (1..=4u32).rev().filter(|k| keep[*k as usize - 1]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// With the shift parameters counted as degree-one variables, every
    /// factorial function is homogeneous of degree equal to the size of
    /// its shape.
    #[test]
    fn factorial_functions_are_homogeneous(parts in arb_shape()) {
        let mut tables = QTables::new(Alphabet::generic(4));
        let q = tables.q(&parts).unwrap();
        let size: u32 = parts.iter().sum();
        prop_assert!(q.is_homogeneous_of(size), "Q_{parts:?} = {q}");
    }
}

fn arb_xpoly(n: u32) -> impl Strategy<Value = XPoly> {
    proptest::collection::vec(
        (proptest::collection::vec(0u32..3, n as usize), -5i64..6),
        0..4,
    )
    .prop_map(move |terms| {
        let mut p = XPoly::zero();
        for (exps, c) in terms {
            p += &XPoly::term(XMonomial::from_exps(exps), Poly::int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Rewriting modulo the relations is a projection compatible with the
    /// ring operations: stable under a second pass, additive, and
    /// multiplicative after reduction.
    #[test]
    fn rewriting_is_stable_and_linear(
        p in arb_xpoly(3),
        q in arb_xpoly(3),
    ) {
        let n = 3;
        let np = normal_form(&p, n).unwrap();
        let nq = normal_form(&q, n).unwrap();
        prop_assert_eq!(&normal_form(&np, n).unwrap(), &np);
        prop_assert_eq!(
            normal_form(&(&p + &q), n).unwrap(),
            &np + &nq
        );
        prop_assert_eq!(
            normal_form(&(&p * &q), n).unwrap(),
            normal_form(&(&np * &nq), n).unwrap()
        );
    }
}
