mod common;

use common::*;
use genco_core::cohenpair::{build_pair, cohen_roster, decode_pair, verify_pair, BinaryString, CohenSpec};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = BinaryString> {
    prop::collection::vec(any::<bool>(), 1..5).prop_map(BinaryString::from)
}

fn cohen_spec() -> impl Strategy<Value = CohenSpec> {
    prop_oneof![
        word().prop_map(CohenSpec::Contains),
        (0usize..24).prop_map(CohenSpec::MinLen),
        word().prop_map(CohenSpec::EndsWith),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn pair_codes_target_and_meets_rosters(
        r1 in prop::collection::vec(cohen_spec(), 0..=8),
        r2 in prop::collection::vec(cohen_spec(), 0..=8),
        x in seq(1),
    ) {
        let (d1, d2) = (cohen_roster(&r1), cohen_roster(&r2));
        let t = build_pair(&d1, &d2, &x, 64).unwrap();
        let ones = t.c1.ones();
        prop_assert!(ones >= 64);
        let bits = decode_pair(&t.c1, &t.c2, ones).unwrap();
        let want: Vec<u8> = x.take(ones).into_iter().map(|b| b as u8).collect();
        prop_assert_eq!(bits, want);
        for d in &d1 {
            prop_assert!(d.met_by(&t.c1, 0));
        }
        for d in &d2 {
            prop_assert!(d.met_by(&t.c2, 0));
        }
        let report = verify_pair(&d1, &d2, &x, &t);
        prop_assert!(report.all_passed(), "{}", report);
    }

    #[test]
    fn pair_runs_are_deterministic(r1 in prop::collection::vec(cohen_spec(), 0..=3), x in seq(1)) {
        let d1 = cohen_roster(&r1);
        prop_assert_eq!(build_pair(&d1, &[], &x, 16).unwrap(), build_pair(&d1, &[], &x, 16).unwrap());
    }
}
