use super::*;
use alloc::vec::Vec;

fn ds(v: &[u32]) -> DistanceSet {
    DistanceSet::new(v.iter().copied()).unwrap()
}

fn predict(id: &str, params: &[u64]) -> Result<Prediction, Outside> {
    find_family(id).unwrap().predict(params).unwrap()
}

#[test]
fn catalog_examples() {
    assert_eq!(predict("1-4-k", &[10]).unwrap().value, Rational::new(4, 11));
    assert_eq!(predict("1-k-kp1", &[2]).unwrap().value, Rational::new(1, 4));
    assert_eq!(predict("1-k-kp5", &[7]), Err(Outside::Excluded));
    assert_eq!(predict("1-k-kp5", &[12]), Err(Outside::Excluded));
    assert!(predict("1-k-kp5", &[13]).is_ok());
    assert_eq!(predict("1-4-k", &[4]), Err(Outside::Domain));
    assert!(matches!(find_family("nope"), Err(Error::UnknownFamily(_))));
}

#[test]
fn ids_unique_and_kinds_ordered() {
    let fams = list_families();
    let mut ids: Vec<&str> = fams.iter().map(|f| f.id).collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), fams.len());
    let rank = |k: FamilyKind| match k {
        FamilyKind::Theorem => 0,
        FamilyKind::Conjecture => 1,
        FamilyKind::LowerBound | FamilyKind::UpperBound => 2,
        FamilyKind::Limit => 3,
    };
    assert!(fams.windows(2).all(|w| rank(w[0].kind) <= rank(w[1].kind)));
}

#[test]
fn reverse_lookup() {
    let c = closed_form(&ds(&[1, 4, 12])).unwrap();
    assert_eq!(c.family.id, "1-4-k");
    assert_eq!(c.prediction.value, Rational::new(5, 13));

    let c = closed_form(&ds(&[1, 3, 5])).unwrap();
    assert_eq!(c.family.id, "all-odd");
    assert_eq!(c.prediction.value, Rational::new(1, 2));

    assert!(closed_form(&ds(&[2, 3, 7])).is_none());
    // Bounds still apply there.
    assert!(matching_families(&ds(&[2, 3, 7])).iter().any(|c| c.family.id == "zhu-6-lower"));

    // Scaled sets resolve through the gcd.
    let c = closed_form(&ds(&[3, 12, 36])).unwrap();
    assert_eq!(c.family.id, "1-4-k");
}

#[test]
fn defaults_round_trip() {
    let mut bad = Vec::new();
    for f in list_families() {
        let params: Vec<u64> = f.params.iter().map(|p| p.default).collect();
        if !matches!(f.predict(&params), Ok(Ok(_))) {
            bad.push(f.id);
        }
    }
    assert!(bad.is_empty(), "defaults outside the domain: {bad:?}");
    for f in list_families() {
        let params: Vec<u64> = f.params.iter().map(|p| p.default).collect();
        let Ok(Ok(pred)) = f.predict(&params) else { panic!("{}: defaults outside the domain", f.id) };
        let set = f.set(&params).unwrap();
        let hits = matching_families(&set);
        let hit = hits.iter().find(|c| c.family.id == f.id);
        let hit = hit.unwrap_or_else(|| panic!("{}: {set} not matched", f.id));
        if !f.generic {
            assert_eq!(hit.prediction, pred, "{}", f.id);
        }
        if let Some(w) = check_witness(f, &params) {
            assert!(w.consistent, "{}: witness {} at {:?}", f.id, w.blocks, params);
        }
    }
}

#[test]
fn decide_relations() {
    let half = Rational::new(1, 2);
    let third = Rational::new(1, 3);
    let quarter = Rational::new(1, 4);
    assert_eq!(Relation::Equal.decide(&third, &third, &third), Some(true));
    assert_eq!(Relation::Equal.decide(&half, &quarter, &third), Some(false));
    assert_eq!(Relation::Equal.decide(&third, &quarter, &half), None);
    assert_eq!(Relation::AtLeast.decide(&quarter, &third, &half), Some(true));
    assert_eq!(Relation::Below.decide(&half, &third, &half), None);
    assert_eq!(Relation::Below.decide(&half, &third, &third), Some(true));
    assert_eq!(Relation::AtMost.decide(&quarter, &third, &half), Some(false));
}

#[test]
fn small_sweeps() {
    let v = verify_family("1-3-2i", 2..=8, &[], Budget::default()).unwrap();
    assert_eq!(v.len(), 7);
    for (i, x) in (2u64..).zip(&v) {
        assert_eq!(x.agreement, Agreement::Match);
        assert_eq!(x.computed, Some(Rational::new(i as i128, 2 * i as i128 + 3)));
        assert!(x.witness.as_ref().unwrap().consistent);
        assert!(x.severity.is_none());
    }
    let v = verify_family("consecutive", 1..=6, &[], Budget::default()).unwrap();
    assert!(v.iter().all(|x| x.agreement == Agreement::Match));

    let v = verify_family("1-k-kp5", 6..=8, &[], Budget::default()).unwrap();
    assert_eq!(v[1].skipped, Some(Outside::Excluded));
    assert!(v[1].prediction.is_none() && v[1].computed.is_none());

    let err = verify_family("lz04-2", 1..=2, &[("z", 1)], Budget::default()).unwrap_err();
    assert!(matches!(err, Error::Parameter(_)));
}

#[test]
fn multiples_witness_both_parities() {
    let f = find_family("one-and-multiples").unwrap();
    for k in 2..9 {
        for l in 2..5 {
            let w = check_witness(f, &[k, l]).unwrap();
            assert!(w.consistent, "k={k} l={l}: {}", w.blocks);
        }
    }
}
