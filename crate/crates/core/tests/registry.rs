//! Catalog families against the engines and against their own witnesses.

use dgratio_core::registry::{
    check_witness, closed_form, find_family, list_families, verify_family, Agreement, FamilyKind, Severity,
};
use dgratio_core::{Budget, DistanceSet, Rational};

fn all_match(id: &str, range: std::ops::RangeInclusive<u64>, fixed: &[(&str, u64)]) {
    let n = range.clone().count();
    let verdicts = verify_family(id, range, fixed, Budget::default()).unwrap();
    let bad: Vec<_> = verdicts
        .iter()
        .filter(|v| v.agreement != Agreement::Match)
        .map(|v| (v.params.clone(), v.computed.clone(), v.prediction.clone()))
        .collect();
    assert!(bad.is_empty(), "{id}: {bad:?}");
    assert_eq!(verdicts.len(), n);
    assert!(verdicts.iter().all(|v| v.severity.is_none()), "{id}");
}

#[test]
fn one_four_k() {
    all_match("1-4-k", 5..=24, &[]);
}

#[test]
fn one_k_kp1_and_kp3() {
    all_match("1-k-kp1", 2..=14, &[]);
    all_match("1-k-kp3", 3..=12, &[]);
}

#[test]
fn odd_and_even_pairs() {
    all_match("1-3-2i", 2..=10, &[]);
    all_match("1-5-2i", 5..=10, &[]);
    all_match("lz04-2", 2..=9, &[("a", 1)]);
    all_match("lz04-4", 1..=6, &[]);
}

#[test]
fn small_theorems_at_defaults() {
    for f in list_families().iter().filter(|f| f.kind == FamilyKind::Theorem) {
        let params: Vec<u64> = f.params.iter().map(|p| p.default).collect();
        let set = f.set(&params).unwrap();
        if set.max_element() > 16 {
            continue;
        }
        let v = dgratio_core::registry::verify_point(f, &params, Budget::default()).unwrap();
        assert_eq!(v.agreement, Agreement::Match, "{} at {:?}", f.id, v.params);
    }
}

/// Every witness table, at several consecutive parameter values so that
/// each residue class is exercised.
#[test]
fn witnesses_are_independent_with_the_predicted_density() {
    for f in list_families().iter().filter(|f| f.has_witness()) {
        let mut params: Vec<u64> = f.params.iter().map(|p| p.default).collect();
        let start = params[f.sweep];
        let mut checked = 0;
        for x in start..start + 30 {
            params[f.sweep] = x;
            if let Some(w) = check_witness(f, &params) {
                assert!(w.independent, "{} at {params:?}: {} not independent", f.id, w.blocks);
                assert!(w.consistent, "{} at {params:?}: {} has density {}", f.id, w.blocks, w.density);
                checked += 1;
            }
        }
        assert!(checked >= 5, "{}: only {checked} witnesses", f.id);
    }
}

#[test]
fn limit_families_carry_positive_limits() {
    for f in list_families().iter().filter(|f| f.kind == FamilyKind::Limit) {
        let params: Vec<u64> = f.params.iter().map(|p| p.default).collect();
        let lim = f.limit_at(&params).unwrap();
        let pred = f.predict(&params).unwrap().unwrap();
        assert!(pred.value <= Rational::new(1, 2));
        assert!(lim > Rational::zero(), "{}", f.id);
    }
}

#[test]
fn severities() {
    assert_eq!(find_family("1-6-k").unwrap().severity, Severity::Finding);
    assert_eq!(find_family("zhu-7-lower").unwrap().severity, Severity::Finding);
    assert_eq!(find_family("1-4-k").unwrap().severity, Severity::Failure);
}

#[test]
fn lookup_by_set() {
    let s = DistanceSet::new([1, 5, 14]).unwrap();
    let c = closed_form(&s).unwrap();
    assert_eq!(c.prediction.value, Rational::new(7, 19));
    // Restricted to a = 1: {2, 3} is only covered by the two-element rules.
    let c = closed_form(&DistanceSet::new([2, 3]).unwrap()).unwrap();
    assert_eq!(c.prediction.value, Rational::new(2, 5));
}
