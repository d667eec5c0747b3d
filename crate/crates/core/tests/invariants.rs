//! Structural invariants of the ratio, checked on random small sets.

use dgratio_core::search::{alpha_circulant, alpha_interval, brute_force_alpha_interval, AlphaTable};
use dgratio_core::stategraph::{
    fractional_chromatic, independence_ratio_exact, is_dominating, is_identifying_code, min_dominating_density,
    min_identifying_density, periodic_coloring,
};
use dgratio_core::{
    compute, expand_blocks, normalize, parse_block_notation, power_distance_set, verify_periodic_independent,
    BlockList, Budget, DistanceSet, Method, Rational, Status,
};
use proptest::prelude::*;

fn ratio(s: &DistanceSet) -> Rational {
    let r = compute(s, Method::Auto, Budget::default()).unwrap();
    assert_eq!(r.status, Status::Exact, "{s}");
    r.value.unwrap()
}

/// Nonempty subsets of `{1, …, max}` with at most `len` elements.
fn small_set(max: u32, len: usize) -> impl Strategy<Value = DistanceSet> {
    proptest::collection::btree_set(1..=max, 1..=len).prop_map(|b| DistanceSet::new(b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_preserves_ratio(s in small_set(8, 3), d in 2u32..=3) {
        prop_assert_eq!(ratio(&s), ratio(&s.scaled(d)));
    }

    #[test]
    fn supersets_have_smaller_ratio(s in small_set(9, 2), extra in small_set(9, 2)) {
        let t = s.union(&extra);
        prop_assert!(ratio(&s) >= ratio(&t), "{} vs {}", s, t);
    }

    #[test]
    fn ratio_lies_between_half_and_trivial_bound(s in small_set(10, 3)) {
        let r = ratio(&s);
        prop_assert!(r <= Rational::new(1, 2));
        prop_assert!(r >= Rational::new(1, s.max_element() as i128 + 1));
        prop_assert_eq!(r == Rational::new(1, 2), normalize(&s).all_odd);
    }

    #[test]
    fn reported_witness_is_sound(s in small_set(10, 3)) {
        let r = compute(&s, Method::Auto, Budget::default()).unwrap();
        prop_assert!(verify_periodic_independent(&r.lower_witness, &s).is_independent());
        prop_assert_eq!(r.lower_witness.density(), r.lower);
    }

    #[test]
    fn engines_agree(s in small_set(9, 3)) {
        let a = compute(&s, Method::StateGraph, Budget::default()).unwrap();
        let b = compute(&s, Method::Search, Budget::default()).unwrap();
        prop_assert_eq!(a.value.clone(), b.value);
        prop_assert_eq!(a.value, Some(independence_ratio_exact(&s).unwrap().0));
    }

    #[test]
    fn interval_and_circulant_sandwich(s in small_set(6, 3), n in 7u32..=16) {
        let r = ratio(&s);
        let mut t = AlphaTable::new();
        let a = alpha_interval(&s, n, &mut t, Budget::default()).unwrap();
        prop_assert_eq!(a, brute_force_alpha_interval(&s, n).unwrap());
        prop_assert!(Rational::new(a as i128, n as i128) >= r);
        let c = alpha_circulant(&s, n, Budget::default()).unwrap();
        prop_assert!(Rational::new(c as i128, n as i128) <= r);
    }

    #[test]
    fn interval_alpha_is_monotone_and_subadditive(s in small_set(6, 3), n in 2u32..=14) {
        let mut t = AlphaTable::new();
        let a = |t: &mut AlphaTable, n| alpha_interval(&s, n, t, Budget::default()).unwrap();
        let an = a(&mut t, n);
        prop_assert!(a(&mut t, n - 1) <= an && an <= a(&mut t, n - 1) + 1);
        for m in 1..n {
            prop_assert!(an <= a(&mut t, m) + a(&mut t, n - m));
        }
    }

    #[test]
    fn block_notation_round_trips(sizes in proptest::collection::vec(1u32..=5, 1..12)) {
        let list = BlockList::new(sizes).unwrap();
        let compressed = list.compress();
        prop_assert_eq!(&expand_blocks(&compressed).unwrap(), &list);
        let reparsed = parse_block_notation(&compressed.to_string()).unwrap();
        prop_assert_eq!(expand_blocks(&reparsed).unwrap(), list);
    }

    #[test]
    fn offsets_rebuild_the_list(sizes in proptest::collection::vec(1u32..=6, 1..10)) {
        let list = BlockList::new(sizes).unwrap();
        let offs = list.offsets();
        prop_assert_eq!(BlockList::from_positions(&offs, list.period()).unwrap(), list);
    }

    #[test]
    fn fractional_chromatic_is_reciprocal(s in small_set(8, 3)) {
        prop_assert_eq!(fractional_chromatic(&s).unwrap() * ratio(&s), Rational::one());
    }

    #[test]
    fn colorings_bound_the_ratio(s in small_set(6, 2), k in 2u32..=4) {
        if let Some(w) = periodic_coloring(&s, k).unwrap() {
            // Some color class has density at least 1/k.
            prop_assert!(ratio(&s) >= Rational::new(1, k as i128));
            prop_assert!(w.pattern.iter().all(|&c| c < k));
        }
    }

    #[test]
    fn domination_witness_and_bounds(s in small_set(4, 2)) {
        let (d, w) = min_dominating_density(&s).unwrap();
        prop_assert!(is_dominating(&w.pattern, &s));
        // Each vertex dominates at most 2|S| + 1 vertices.
        prop_assert!(d >= Rational::new(1, 2 * s.len() as i128 + 1));
        prop_assert!(d <= Rational::new(1, 2));
    }

    #[test]
    fn identifying_witness_is_valid(s in small_set(3, 2)) {
        let (d, w) = min_identifying_density(&s, 1).unwrap();
        prop_assert!(is_identifying_code(&w.pattern, &s));
        prop_assert!(d > Rational::zero() && d <= Rational::one());
    }

    #[test]
    fn power_sets_grow(s in small_set(5, 2), r in 1u32..=3) {
        let p = power_distance_set(&s, r);
        let q = power_distance_set(&s, r + 1);
        prop_assert!(s.iter().all(|d| p.contains(d)));
        prop_assert!(p.iter().all(|d| q.contains(d)));
        prop_assert!(p.max_element() == r * s.max_element());
    }
}
