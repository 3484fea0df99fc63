//! Randomized algebraic laws for scalars and the graded algebra.

use gjs_cup::scalar::Laurent;
use gjs_cup::tl::enumerate_diagrams;
use gjs_cup::{Diagram, GradedElement, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
        .prop_map(|t| Laurent::from_terms(t.into_iter().map(|(p, c)| (p, BigInt::from(c)))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent().prop_filter("nonzero", |d| !d.is_zero()))
        .prop_map(|(n, d)| Scalar::from_parts(n, d).expect("nonzero denominator"))
}

fn element() -> impl Strategy<Value = GradedElement> {
    let pool: Vec<Diagram> = (0..=2).flat_map(enumerate_diagrams).collect();
    let n = pool.len();
    prop::collection::vec((0..n, -3i64..=3, -2i32..=2), 1..4).prop_map(move |terms| {
        let mut x = GradedElement::zero();
        for (k, c, p) in terms {
            x.add_term(pool[k].clone(), Scalar::from_int(c).mul(&Scalar::q_pow(p)));
        }
        x
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Scalar::zero());
        if !b.is_zero() {
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            prop_assert_eq!(b.mul(&b.recip().unwrap()), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        for q0 in [rat(2, 1), rat(3, 2), rat(5, 7)] {
            if let (Ok(x), Ok(y)) = (a.eval(&q0), b.eval(&q0)) {
                prop_assert_eq!(a.add(&b).eval(&q0).unwrap(), &x + &y);
                prop_assert_eq!(a.mul(&b).eval(&q0).unwrap(), &x * &y);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn unit(a in element()) {
        let one = GradedElement::one();
        prop_assert_eq!(one.multiply(&a), a.clone());
        prop_assert_eq!(a.multiply(&one), a);
    }

    #[test]
    fn trace_is_cyclic(a in element(), b in element()) {
        prop_assert_eq!(a.multiply(&b).trace(), b.multiply(&a).trace());
    }

    #[test]
    fn adjoint_reverses_products(a in element(), b in element()) {
        prop_assert_eq!(a.multiply(&b).adjoint(), b.adjoint().multiply(&a.adjoint()));
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn bullet_is_associative_and_isometric(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.bullet(&b).bullet(&c), a.bullet(&b.bullet(&c)));
        if a.is_homogeneous() && b.is_homogeneous() {
            prop_assert_eq!(a.bullet(&b).norm_squared(), a.norm_squared().mul(&b.norm_squared()));
        }
    }

    #[test]
    fn inner_product_matches_trace(a in element(), b in element()) {
        prop_assert_eq!(a.inner(&b), b.adjoint().multiply(&a).trace());
    }
}
