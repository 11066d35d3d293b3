use super::*;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::coding::HelpSet;

fn nat(z: u64) -> Nat {
    Nat::from(z)
}

fn nats(zs: &[u64]) -> BTreeSet<Nat> {
    zs.iter().copied().map(nat).collect()
}

/// stem ⟨1⟩ with 0 and 2 excluded at ⟨1⟩.
fn sample() -> HechlerCondition {
    HechlerCondition::with_stem(Node::from([1]))
        .exclude(Node::from([1]), [nat(0), nat(2)])
        .unwrap()
}

#[test]
fn membership() {
    let t = sample();
    assert!(t.contains(&Node::from([1, 3])));
    assert!(!t.contains(&Node::from([1, 2])));
    assert!(!t.contains(&Node::from([0])));
    assert!(t.contains(&Node::root()));
    assert!(t.contains(&Node::from([1, 3, 0])));
}

#[test]
fn excluded_successor_sets() {
    let t = sample();
    assert_eq!(t.excluded_successors(&Node::from([1])).unwrap(), nats(&[0, 2]));
    assert_eq!(t.excluded_successors(&Node::from([1, 3])).unwrap(), nats(&[]));
    let floored = HechlerCondition::full().with_floor(FloorRule::constant(3));
    assert_eq!(
        floored.excluded_successors(&Node::from([5])).unwrap(),
        nats(&[0, 1, 2, 3])
    );
    assert_eq!(
        t.excluded_successors(&Node::from([1, 2])),
        Err(ConditionError::NotInTree(Node::from([1, 2])))
    );
    assert!(matches!(
        t.excluded_successors(&Node::root()),
        Err(ConditionError::BelowStem { .. })
    ));
}

#[test]
fn restriction() {
    let full = HechlerCondition::full();
    let r = full.restrict(&Node::from([1, 3])).unwrap();
    assert_eq!(r, HechlerCondition::with_stem(Node::from([1, 3])));

    let r = sample().restrict(&Node::from([1, 3])).unwrap();
    assert_eq!(r.stem(), &Node::from([1, 3]));
    assert!(r.exclusions().is_empty());
    assert_eq!(r.restrict(&Node::from([1, 3])).unwrap(), r);

    assert!(sample().restrict(&Node::from([1, 2])).is_err());
    // Below the stem nothing changes.
    assert_eq!(sample().restrict(&Node::root()).unwrap(), sample());
}

#[test]
fn meets() {
    let full = HechlerCondition::full();
    let t = sample().with_floor(FloorRule::affine(1, 1));
    assert_eq!(full.meet(&t).unwrap(), Some(t.clone()));
    assert_eq!(t.meet(&full).unwrap(), Some(t.clone()));

    let kills = HechlerCondition::full().exclude(Node::root(), [nat(5)]).unwrap();
    assert_eq!(kills.meet(&HechlerCondition::with_stem(Node::from([5]))).unwrap(), None);

    let c2 = HechlerCondition::full().with_floor(FloorRule::constant(2));
    let lin = HechlerCondition::full().with_floor(FloorRule::affine(1, 0));
    let m = c2.meet(&lin).unwrap().unwrap();
    let f = m.floor().unwrap();
    assert_eq!(f, &FloorRule::new(vec![nat(2), nat(2), nat(2)], nat(1), nat(0)));
    for n in 0..6 {
        assert_eq!(f.eval(n), nat(2.max(n as u64)));
    }

    assert!(matches!(
        HechlerCondition::with_stem(Node::from([0])).meet(&HechlerCondition::with_stem(Node::from([1]))),
        Err(ConditionError::IncomparableStems(..))
    ));
}

#[test]
fn inclusion_examples() {
    let t = sample();
    assert_eq!(t.extends(&t), Extends::Yes);
    assert_eq!(t.restrict(&Node::from([1, 7, 0])).unwrap().extends(&t), Extends::Yes);

    let t1 = HechlerCondition::full().exclude(Node::root(), [nat(4)]).unwrap();
    let t2 = HechlerCondition::full();
    assert_eq!(t2.extends(&t1), Extends::No(Node::from([4])));
    assert_eq!(t1.extends(&t2), Extends::Yes);
}

#[test]
fn inclusion_against_floors() {
    let f3 = HechlerCondition::full().with_floor(FloorRule::constant(3));
    let f5 = HechlerCondition::full().with_floor(FloorRule::constant(5));
    assert_eq!(f5.extends(&f3), Extends::Yes);
    assert_eq!(f3.extends(&f5), Extends::No(Node::from([4])));

    // Linear floor overtakes the constant one at level 4.
    let lin = HechlerCondition::full().with_floor(FloorRule::affine(1, 1));
    let flat = HechlerCondition::full().with_floor(FloorRule::constant(4));
    match flat.extends(&lin) {
        Extends::No(w) => {
            assert!(flat.contains(&w) && !lin.contains(&w));
            assert_eq!(w.len(), 5);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn inclusion_when_the_other_stem_is_longer() {
    // A tree branching at ⟨⟩ is not inside one whose stem is ⟨3⟩.
    let narrow = HechlerCondition::with_stem(Node::from([3]));
    let wide = HechlerCondition::full();
    assert_eq!(wide.extends(&narrow), Extends::No(Node::from([0])));
    // Unless every other branch is excluded, which a finite atom cannot do.
    let only3 = HechlerCondition::full()
        .exclude(Node::root(), [nat(0), nat(1), nat(2)])
        .unwrap();
    assert_eq!(only3.extends(&narrow), Extends::No(Node::from([4])));
}

#[test]
fn bounded_refutation() {
    let t = sample();
    assert_eq!(t.extends_bounded(&t, 5, 10), Bounded::ConsistentUpTo);
    let t1 = HechlerCondition::full().exclude(Node::root(), [nat(4)]).unwrap();
    assert_eq!(
        HechlerCondition::full().extends_bounded(&t1, 1, 5),
        Bounded::No(Node::from([4]))
    );
    let zero_floor = HechlerCondition::full().with_floor(FloorRule::constant(0));
    assert_eq!(
        HechlerCondition::full().extends_bounded(&zero_floor, 1, 1),
        Bounded::No(Node::from([0]))
    );
    // Width too small to see the excluded value.
    assert_eq!(
        HechlerCondition::full().extends_bounded(&t1, 1, 3),
        Bounded::ConsistentUpTo
    );
}

#[test]
fn stem_avoidance() {
    let evens = HelpSet::evens();
    assert!(stem_extends_avoiding(&Node::from([1, 3, 5]), &Node::from([1]), &evens));
    assert!(!stem_extends_avoiding(&Node::from([1, 4]), &Node::from([1]), &evens));
    assert!(stem_extends_avoiding(&Node::from([1]), &Node::from([1]), &evens));
    assert!(!stem_extends_avoiding(&Node::from([2]), &Node::from([1]), &evens));
}

#[test]
fn avoiding_extension() {
    let evens = HelpSet::evens();
    let full = HechlerCondition::full();
    assert_eq!(sample().extends_avoiding(&sample(), &evens), ExtendsA::Yes);
    let odd = full.restrict(&Node::from([1, 3])).unwrap();
    assert_eq!(odd.extends_avoiding(&full, &evens), ExtendsA::Yes);
    let even = full.restrict(&Node::from([2])).unwrap();
    assert_eq!(
        even.extends_avoiding(&full, &evens),
        ExtendsA::No(AvoidFailure::StemAvoidance)
    );
    assert_eq!(
        full.extends_avoiding(&odd, &evens),
        ExtendsA::No(AvoidFailure::Inclusion(Node::from([0])))
    );
}

#[test]
fn well_formedness() {
    assert!(sample().is_well_formed());
    let bad_key = BTreeMap::from([(Node::from([0]), nats(&[1]))]);
    assert!(matches!(
        HechlerCondition::new(Node::from([1]), bad_key, None),
        Err(ConditionError::KeyBelowStem { .. })
    ));
    let empty_set = BTreeMap::from([(Node::from([1]), nats(&[]))]);
    let t = HechlerCondition::new(Node::from([1]), empty_set, None).unwrap();
    assert!(t.exclusions().is_empty());
}

#[test]
fn canonical_text() {
    let t = sample()
        .exclude(Node::from([1, 3]), [nat(7)])
        .unwrap()
        .with_floor(FloorRule::new(vec![nat(1)], nat(2), nat(3)));
    let s = t.to_string();
    assert_eq!(s, "stem=[1];excl{[1]:{0,2};[1,3]:{7}};floor(table=[1],a=2,b=3)");
    assert_eq!(s.parse::<HechlerCondition>().unwrap(), t);
    assert_eq!(HechlerCondition::full().to_string(), "stem=[];excl{};floor(-)");
}

#[test]
fn least_successor_skips_constraints() {
    let t = sample().with_floor(FloorRule::constant(0));
    let v: Vec<Nat> = vec![nat(1)];
    assert_eq!(t.least_successor(&v, |_| false), nat(1));
    assert_eq!(t.least_successor(&v, |z| *z == nat(1)), nat(3));
}
