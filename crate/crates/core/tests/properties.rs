use num_bigint::BigInt;
use proptest::prelude::*;
use qpartition::moves::{compose, decompose};
use qpartition::partitions::{check_at_most_twice, check_kr};
use qpartition::ppoly::qbinomial;
use qpartition::qseries::{inv_pochhammer, inv_pochhammer_product, neg_pochhammer_alternating, pochhammer_product};
use qpartition::{BiSeries, KrVariant, Partition, QPoly};

const WQ: usize = 8;
const WT: usize = 3;

fn series() -> impl Strategy<Value = BiSeries> {
    prop::collection::vec((0..=WQ, 0..=WT, -6i64..=6), 0..10).prop_map(|terms| {
        let mut s = BiSeries::zero(WQ, WT);
        for (dq, dt, c) in terms {
            s.add_term(&BigInt::from(c), dq, dt);
        }
        s
    })
}

fn poly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0usize..12, -9i64..=9), 0..6)
        .prop_map(|terms| QPoly::from_terms(&terms.into_iter().map(|(e, c)| (e, BigInt::from(c))).collect::<Vec<_>>()))
}

/// Parts in 1..=max, each value at most twice.
fn at_most_twice(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u8..3, max as usize).prop_map(|mult| {
        let parts = mult
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat(i as u32 + 1).take(k as usize))
            .collect();
        Partition::new(parts).unwrap()
    })
}

proptest! {
    #[test]
    fn addition_is_a_group(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), BiSeries::zero(WQ, WT));
    }

    #[test]
    fn multiplication_is_a_commutative_ring(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &BiSeries::one(WQ, WT), a.clone());
    }

    #[test]
    fn geometric_inverse_undoes_one_minus(a in series(), dt in 0usize..3, dq in 0usize..4) {
        prop_assume!(dt + dq > 0);
        let back = a.mul_one_minus(dt, dq).mul_geometric_inverse(dt, dq).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn series_json_round_trips(a in series()) {
        prop_assert_eq!(BiSeries::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn identity_substitution(a in series()) {
        prop_assert_eq!(a.substitute_scale(0, 1).unwrap(), a);
    }

    #[test]
    fn pochhammer_pairs_are_inverse(x_dt in 0usize..3, x_dq in 0usize..5, base in 1usize..5) {
        prop_assume!(x_dt + x_dq > 0);
        let (q, t) = (24, 4);
        let inv = inv_pochhammer(x_dt, x_dq, base, q, t).unwrap();
        let alt = neg_pochhammer_alternating(x_dt, x_dq, base, q, t).unwrap();
        prop_assert_eq!(&inv * &alt, BiSeries::one(q, t));
        prop_assert_eq!(inv, inv_pochhammer_product(x_dt, x_dq, base, q, t).unwrap());
        prop_assert_eq!(alt, pochhammer_product(x_dt, x_dq, base, q, t).unwrap());
    }

    #[test]
    fn poly_text_round_trips(p in poly()) {
        prop_assert_eq!(p.to_string().parse::<QPoly>().unwrap(), p);
    }

    #[test]
    fn qbinomial_pascal(n in 1i64..10, k in 0i64..10, base in 1usize..4) {
        let lhs = qbinomial(n, k, base);
        let rhs = &qbinomial(n - 1, k, base).shift(k.max(0) as usize * base) + &qbinomial(n - 1, k - 1, base);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn third_class_is_the_second_shifted_by_two(parts in prop::collection::vec(3u32..40, 0..8)) {
        let lifted = Partition::from_unsorted(parts).unwrap();
        let lowered = Partition::new(lifted.parts().iter().map(|p| p - 2).collect()).unwrap();
        prop_assert_eq!(
            check_kr(&lifted, KrVariant::DPrimePrime).unwrap(),
            check_kr(&lowered, KrVariant::DPrime).unwrap()
        );
    }

    #[test]
    fn moves_round_trip(lambda in at_most_twice(18)) {
        prop_assert!(check_at_most_twice(&lambda));
        let d = decompose(&lambda).unwrap();
        prop_assert_eq!(d.weight(), lambda.weight());
        prop_assert_eq!(compose(&d).unwrap(), lambda);
    }
}
