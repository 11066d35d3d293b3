mod common;

use common::*;
use genco_core::coding::decode;
use genco_core::conditions::ExtendsA;
use genco_core::densesets::{roster, DenseSpec};
use genco_core::generic::{
    build_coded_generic, build_plain_generic, extract_g, verify_plain_transcript, verify_transcript, Step,
};
use genco_core::{HelpSet, Nat};
use proptest::prelude::*;

fn help(kind: u8, abar: &genco_core::EventuallyPeriodicSeq) -> HelpSet {
    match kind % 3 {
        0 => HelpSet::evens(),
        1 => HelpSet::primes(),
        _ => HelpSet::self_code(abar.clone()).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn target_is_decoded_and_roster_met(
        specs in prop::collection::vec(dense_spec(), 1..=8),
        kind in 0u8..3,
        abar in seq(4),
        x in seq(5),
    ) {
        prop_assume!(kind != 0 || !specs.iter().any(trapped_by_evens));
        let a = help(kind, &abar);
        let d = roster(&specs).unwrap();
        let t = build_coded_generic(&d, &a, &x, 64, 100_000).unwrap();
        let got = decode(&a, &t.g_prefix).unwrap();
        prop_assert_eq!(&got[..64], &x.take(64)[..]);
        prop_assert_eq!(extract_g(&t).unwrap(), t.g_prefix.clone());

        let report = verify_transcript(&d, &a, &x, &t);
        prop_assert!(report.all_passed(), "{}", report);

        // Meets avoid A; codes do not.
        let mut prev = genco_core::HechlerCondition::full();
        for s in &t.steps {
            let avoiding = s.condition().extends_avoiding(&prev, &a) == ExtendsA::Yes;
            match s {
                Step::Meet { .. } => prop_assert!(avoiding),
                Step::Code { .. } => prop_assert!(!avoiding),
            }
            prev = s.condition().clone();
        }
    }

    #[test]
    fn plain_runs_verify(specs in prop::collection::vec(dense_spec(), 1..=8), steps in 0usize..20) {
        let d = roster(&specs).unwrap();
        let t = build_plain_generic(&d, steps, 100_000).unwrap();
        let report = verify_plain_transcript(&d, &t);
        prop_assert!(report.all_passed(), "{}", report);
    }

    #[test]
    fn runs_are_deterministic(specs in prop::collection::vec(dense_spec(), 1..=4), x in seq(3)) {
        let d = roster(&specs).unwrap();
        let a = HelpSet::primes();
        let one = build_coded_generic(&d, &a, &x, 16, 100_000).unwrap();
        let two = build_coded_generic(&roster(&specs).unwrap(), &a, &x, 16, 100_000).unwrap();
        prop_assert_eq!(one, two);
    }
}

#[test]
fn steps_beyond_the_roster_cycle_it() {
    let specs = [DenseSpec::StemLength(2), DenseSpec::StemHits(Nat::from(7u32))];
    let d = roster(&specs).unwrap();
    let t = build_plain_generic(&d, 5, 1000).unwrap();
    let order: Vec<usize> = t
        .steps
        .iter()
        .map(|s| match s {
            Step::Meet { roster_index, .. } => *roster_index,
            Step::Code { .. } => unreachable!(),
        })
        .collect();
    assert_eq!(order, vec![0, 1, 0, 1, 0]);
}
