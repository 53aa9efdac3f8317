use orbivol::lie::verify_bracket_identities;
use orbivol::{GroundField, LieAlgebraModel};

fn report(n: usize) -> orbivol::lie::IdentityReport {
    verify_bracket_identities(&LieAlgebraModel::build(GroundField::Quaternion, n).unwrap()).unwrap()
}

#[test]
fn every_family_matches_the_commutator() {
    for n in 1..=3 {
        let r = report(n);
        assert_eq!(r.families.len(), 21);
        for f in &r.families {
            assert!(f.passed(), "n={n} {}: {} of {} tuples fail, first {:?}", f.family, f.failures.len(), f.tuples_checked, f.failures.first());
        }
    }
}

#[test]
fn tuple_counts_at_rank_two() {
    let r = report(2);
    let count = |name: &str| r.family(name).unwrap().tuples_checked;
    assert_eq!(count("alal"), 1);
    assert_eq!(count("aleI"), 9);
    assert_eq!(count("IeJe"), 18);
    assert_eq!(count("bePbeP"), 4);
    assert_eq!(count("IalPJalP"), 24);
}

#[test]
fn report_serializes_with_one_based_indices() {
    let r = report(1);
    let json = serde_json::to_value(&r.families[0]).unwrap();
    assert!(json.get("family").is_some());
    assert!(json.get("tuples_checked").is_some());
    assert!(json.get("failures").unwrap().as_array().unwrap().is_empty());
}
