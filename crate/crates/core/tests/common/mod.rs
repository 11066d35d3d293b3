#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use genco_core::{FloorRule, HechlerCondition, Nat, Node};
use proptest::prelude::*;

pub fn nat(z: u64) -> Nat {
    Nat::from(z)
}

pub fn node(max_len: usize, max_entry: u64) -> impl Strategy<Value = Node> {
    prop::collection::vec(0..=max_entry, 0..=max_len).prop_map(Node::from)
}

pub fn floor() -> impl Strategy<Value = FloorRule> {
    (prop::collection::vec(0u64..6, 0..3), 0u64..3, 0u64..5)
        .prop_map(|(table, a, b)| FloorRule::new(table.into_iter().map(nat).collect(), nat(a), nat(b)))
}

/// Small random conditions: stem of length ≤ 2, a few exclusion atoms just
/// above it, and sometimes a floor.
pub fn condition() -> impl Strategy<Value = HechlerCondition> {
    let stem = prop::collection::vec(0u64..5, 0..3);
    let atoms = prop::collection::vec(
        (
            prop::collection::vec(0u64..5, 0..3),
            prop::collection::btree_set(0u64..7, 1..4),
        ),
        0..4,
    );
    (stem, atoms, prop::option::of(floor())).prop_map(|(stem, atoms, floor)| {
        let mut excl: BTreeMap<Node, BTreeSet<Nat>> = BTreeMap::new();
        for (suffix, zs) in atoms {
            let key: Vec<u64> = stem.iter().chain(&suffix).copied().collect();
            excl.entry(Node::from(key)).or_default().extend(zs.into_iter().map(nat));
        }
        HechlerCondition::new(Node::from(stem), excl, floor).expect("keys extend the stem")
    })
}

/// A node of `t` reached from the stem by taking, at each level, the
/// `k`-th allowed step for each pick `k`.
pub fn walk(t: &HechlerCondition, picks: &[u8]) -> Node {
    let mut v = t.stem().clone();
    for &k in picks {
        let mut seen = 0;
        let z = t.least_successor(v.entries(), |_| {
            seen += 1;
            seen <= k as usize
        });
        v.push(z);
    }
    v
}

/// Membership straight from the definition, without the library's step
/// helper.
pub fn brute_contains(t: &HechlerCondition, u: &Node) -> bool {
    let (s, e) = (t.stem().entries(), u.entries());
    let n = s.len().min(e.len());
    if s[..n] != e[..n] {
        return false;
    }
    for i in s.len()..e.len() {
        let v = Node::new(e[..i].to_vec());
        if t.exclusions().get(&v).is_some_and(|zs| zs.contains(&e[i])) {
            return false;
        }
        if t.floor().is_some_and(|f| e[i] <= f.eval(i)) {
            return false;
        }
    }
    true
}

/// First node of `a ∖ b` found by full enumeration of nodes with length
/// `≤ depth` and entries `≤ width`, only descending inside `a`.
pub fn brute_difference(a: &HechlerCondition, b: &HechlerCondition, depth: usize, width: u64) -> Option<Node> {
    fn go(a: &HechlerCondition, b: &HechlerCondition, u: Node, depth: usize, width: u64) -> Option<Node> {
        if !brute_contains(a, &u) {
            return None;
        }
        if !brute_contains(b, &u) {
            return Some(u);
        }
        if u.len() == depth {
            return None;
        }
        (0..=width).find_map(|z| go(a, b, u.child(nat(z)), depth, width))
    }
    go(a, b, Node::root(), depth, width)
}

use genco_core::densesets::{DenseSpec, StemPattern, StepConstraint};
use genco_core::EventuallyPeriodicSeq;

pub fn seq(max_value: u64) -> impl Strategy<Value = EventuallyPeriodicSeq> {
    (
        prop::collection::vec(0..=max_value, 0..4),
        prop::collection::vec(0..=max_value, 1..5),
    )
        .prop_map(|(p, c)| EventuallyPeriodicSeq::new(p, c).unwrap())
}

fn honest_step() -> impl Strategy<Value = StepConstraint> {
    prop_oneof![
        (0u64..20).prop_map(|k| StepConstraint::AtLeast(nat(k))),
        (1u64..6, 0u64..6).prop_map(|(m, r)| StepConstraint::Residue {
            modulus: nat(m),
            residue: nat(r % m)
        }),
    ]
}

/// Built-in dense sets whose good-successor lists are infinite.
pub fn dense_spec() -> impl Strategy<Value = DenseSpec> {
    prop_oneof![
        (0usize..6).prop_map(DenseSpec::StemLength),
        floor().prop_map(DenseSpec::Dominate),
        (0u64..40).prop_map(|k| DenseSpec::StemHits(nat(k))),
        prop::collection::vec(
            (prop::collection::vec(honest_step(), 1..4), prop::option::of(floor()))
                .prop_map(|(steps, floor)| StemPattern { steps, floor }),
            1..3
        )
        .prop_map(DenseSpec::UserStems),
    ]
}

/// Whether every good successor some pattern can ask for lies in the evens:
/// such a set cannot be met by an extension avoiding the evens.
pub fn trapped_by_evens(spec: &DenseSpec) -> bool {
    let DenseSpec::UserStems(patterns) = spec else {
        return false;
    };
    patterns.iter().flat_map(|p| &p.steps).any(|c| match c {
        StepConstraint::Residue { modulus, residue } => modulus % 2u32 == nat(0) && residue % 2u32 == nat(0),
        _ => false,
    })
}
