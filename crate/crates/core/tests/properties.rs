use mzvff::exactalg::rational::{rat, rat_frac};
use mzvff::exactalg::rf_equal;
use mzvff::zeta_polyring::{check_involution, closed_form_poly, completed_xi, involution_image, PolyZetaContext};
use mzvff::{ExponentVector, FactoredRational, LaurentPolynomial, QPowerFactor};
use proptest::prelude::*;

const Q: u64 = 3;

/// Random rational function in two variables with nonnegative exponents.
fn arb_rational() -> impl Strategy<Value = FactoredRational> {
    let term = (-6i64..7, 1i64..4, 0i64..3, 0i64..3);
    let factor = (-1i64..3, 0i64..3, 0i64..3).prop_filter("nonzero exponent", |(_, a, b)| a + b > 0);
    (
        proptest::collection::vec(term, 1..4),
        proptest::collection::vec(factor, 0..3),
    )
        .prop_map(|(terms, factors)| {
            let num = LaurentPolynomial::from_terms(
                2,
                terms
                    .into_iter()
                    .map(|(n, d, a, b)| (rat_frac(n, d), ExponentVector::new(vec![a, b]))),
            )
            .unwrap();
            let factors = factors
                .into_iter()
                .map(|(c, a, b)| QPowerFactor::new(c, [a, b]).unwrap());
            FactoredRational::new(Q, num, factors).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equality_is_reflexive_and_symmetric(a in arb_rational(), b in arb_rational()) {
        prop_assert!(rf_equal(&a, &a).unwrap());
        prop_assert_eq!(rf_equal(&a, &b).unwrap(), rf_equal(&b, &a).unwrap());
    }

    #[test]
    fn equality_is_transitive_through_rewrites(a in arb_rational(), k in 1i64..3) {
        // a, a * (1 - 3^k x1)/(1 - 3^k x1), reduce(a) are all the same value
        let f = QPowerFactor::new(k, [1, 0]).unwrap();
        let b = FactoredRational::new(Q, f.to_poly(Q), [f]).unwrap().mul(&a).unwrap();
        let c = a.reduce();
        prop_assert!(rf_equal(&a, &b).unwrap());
        prop_assert!(rf_equal(&b, &c).unwrap());
        prop_assert!(rf_equal(&a, &c).unwrap());
    }

    #[test]
    fn series_of_product_is_product_of_series(a in arb_rational(), b in arb_rational()) {
        let n = 4;
        let lhs = a.mul(&b).unwrap().series_expand(n).unwrap();
        let rhs = a.series_expand(n).unwrap().mul(&b.series_expand(n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_of_sum_is_sum_of_series(a in arb_rational(), b in arb_rational()) {
        let n = 3;
        let lhs = a.add(&b).unwrap().series_expand(n).unwrap();
        let sa = a.series_expand(n).unwrap();
        let sb = b.series_expand(n).unwrap();
        let mut rhs = sa.clone();
        for (e, c) in sb.iter() {
            rhs.add_to(e.clone(), c.clone());
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduce_preserves_series(a in arb_rational()) {
        prop_assert_eq!(a.series_expand(4).unwrap(), a.reduce().series_expand(4).unwrap());
    }

    #[test]
    fn subtraction_gives_zero(a in arb_rational()) {
        prop_assert!(a.sub(&a).unwrap().reduce().is_zero());
    }

    #[test]
    fn involution_is_an_involution(q in 2u64..6, d in 1usize..4) {
        let ctx = PolyZetaContext::new(q, d).unwrap();
        let xi = completed_xi(&ctx);
        let img = involution_image(&ctx);
        let twice = xi.substitute(0, &img).unwrap().substitute(0, &img).unwrap();
        prop_assert!(rf_equal(&twice, &xi).unwrap());
        prop_assert!(check_involution(&ctx).unwrap());
    }

    #[test]
    fn closed_form_constant_term_is_one(q in 2u64..8, d in 1usize..4) {
        let s = closed_form_poly(&PolyZetaContext::new(q, d).unwrap()).series_expand(1).unwrap();
        prop_assert_eq!(s.get(&vec![0; d]), rat(1));
    }
}
