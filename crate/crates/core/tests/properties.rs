use num_traits::Zero;
use proptest::prelude::*;
use symex_core::bigcomb::{binomial_first, choose};
use symex_core::coeffs::{coeff_closed, coeff_recurrence};
use symex_core::esp::{
    esp_all, esp_direct, esp_extraction, esp_extraction_with, ExtractionOptions,
};
use symex_core::series::TruncatedSeries;
use symex_core::subsets::k_subsets;
use symex_core::{ArbInt, CoefficientRoute, RootSet, SieveShape, Strategy as Exec};

fn root_set(max_n: usize, max_m: u64) -> impl Strategy<Value = RootSet> {
    prop::collection::vec(1..=max_m, 1..=max_n).prop_map(|v| RootSet::new(v).unwrap())
}

fn series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-50i64..=50, order + 1)
        .prop_map(move |v| TruncatedSeries::from_coeffs(order, v.into_iter().map(ArbInt::from)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_routes_agree(r in root_set(10, 9)) {
        for (i, dp) in esp_all(&r).iter().enumerate().skip(1) {
            let (value, breakdown) = esp_extraction(&r, i).unwrap();
            prop_assert_eq!(&value, &esp_direct(&r, i));
            prop_assert_eq!(&value, dp);
            prop_assert_eq!(breakdown.recompute_total(), value);
        }
    }

    #[test]
    fn bracket_sizes_follow_binomials(r in root_set(9, 6), pick in 0usize..9) {
        let i = pick % r.len() + 1;
        let (_, b) = esp_extraction(&r, i).unwrap();
        prop_assert_eq!(b.terms.len(), i - 1);
        for t in &b.terms {
            let entries = t.bracket.as_ref().unwrap().len();
            prop_assert_eq!(ArbInt::from(entries), choose(r.len() as i64, i - t.h));
        }
    }

    #[test]
    fn permutation_invariance(values in prop::collection::vec(1u64..=9, 1..=8), rot in 0usize..8) {
        let r = RootSet::new(values.clone()).unwrap();
        let mut moved = values.clone();
        let len = moved.len();
        moved.rotate_left(rot % len);
        moved.reverse();
        let p = RootSet::new(moved).unwrap();
        for i in 1..=r.len() {
            prop_assert_eq!(esp_extraction(&r, i).unwrap().0, esp_extraction(&p, i).unwrap().0);
            prop_assert_eq!(esp_direct(&r, i), esp_direct(&p, i));
        }
    }

    #[test]
    fn strategies_and_routes_give_identical_breakdowns(r in root_set(10, 9), pick in 0usize..10) {
        let i = pick % r.len() + 1;
        let base = esp_extraction(&r, i).unwrap();
        for (strategy, route) in [
            (Exec::Sequential, CoefficientRoute::ClosedForm),
            (Exec::Parallel, CoefficientRoute::Recurrence),
            (Exec::Sequential, CoefficientRoute::Recurrence),
        ] {
            let opts = ExtractionOptions { strategy, route, ..ExtractionOptions::default() };
            prop_assert_eq!(&esp_extraction_with(&r, i, &opts).unwrap(), &base);
        }
    }

    #[test]
    fn lexicographic_and_complete(n in 1usize..=10, k in 0usize..=10) {
        let all: Vec<_> = k_subsets(n, k).collect();
        prop_assert!(all.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(ArbInt::from(all.len()), choose(n as i64, k));
    }

    #[test]
    fn series_ring_laws(a in series(16), b in series(16), c in series(16)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    }

    #[test]
    fn binomial_first_is_the_polynomial_extension(x in -40i64..=40, k in 0usize..=12) {
        // brute force: product of (x - j) over j < k, divided by k!
        let mut num = ArbInt::from(1);
        let mut den = ArbInt::from(1);
        for j in 0..k as i64 {
            num *= x - j;
            den *= j + 1;
        }
        prop_assert!((&num % &den).is_zero());
        prop_assert_eq!(binomial_first(&ArbInt::from(x), k), num / den);
    }
}

#[test]
fn route_equivalence_over_extended_range() {
    // h runs to 12 regardless of i
    for n in 1..=20 {
        for i in 1..=n {
            let shape = SieveShape::new(n, i).unwrap();
            let seq = coeff_recurrence(shape, 12);
            for h in 1..=12 {
                assert_eq!(
                    seq.get(h).unwrap(),
                    &coeff_closed(shape, h),
                    "n={n} i={i} h={h}"
                );
            }
        }
    }
}
