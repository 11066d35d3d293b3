//! Finitely presented Tree-Hechler conditions.
//!
//! A condition is an infinite tree `T ⊆ ω^{<ω}` in which every node at or
//! above the stem has cofinitely many immediate successors. We present such a
//! tree by its stem, finitely many exclusion atoms `v ↦ {z, ...}` (forbidding
//! the steps `v⌢z`) and an optional [`FloorRule`] forbidding every step
//! `z ≤ f(ℓ)` out of a node of level `ℓ`. This fragment is closed under
//! restriction and meets, and inclusion between two presented trees is
//! decidable.

mod floor;
mod node;
mod text;

use alloc::collections::{BTreeMap, BTreeSet};
use core::fmt;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::coding::Membership;
use crate::Nat;

pub use floor::FloorRule;
pub use node::Node;
pub use text::{parse_node, ParseConditionError};

/// Witness levels further than this above the stem are not materialized;
/// `extends` answers `Unknown` instead.
const MAX_WITNESS_DEPTH: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("node {0} is not in the tree")]
    NotInTree(Node),
    #[error("node {node} lies strictly below the stem {stem}")]
    BelowStem { node: Node, stem: Node },
    #[error("stems {0} and {1} are incomparable")]
    IncomparableStems(Node, Node),
    #[error("exclusion key {key} does not extend the stem {stem}")]
    KeyBelowStem { key: Node, stem: Node },
}

/// Outcome of the inclusion test `T2 ⊆ T1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extends {
    Yes,
    /// A node of `T2 ∖ T1`.
    No(Node),
    Unknown,
}

/// Outcome of [`HechlerCondition::extends_bounded`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounded {
    ConsistentUpTo,
    No(Node),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AvoidFailure {
    /// `T2 ⊄ T1`, with a witness node.
    Inclusion(Node),
    /// The stem of `T2` takes a new value inside `A`.
    StemAvoidance,
}

/// Outcome of the `≤_A` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendsA {
    Yes,
    No(AvoidFailure),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HechlerCondition {
    stem: Node,
    exclusions: BTreeMap<Node, BTreeSet<Nat>>,
    floor: Option<FloorRule>,
}

impl HechlerCondition {
    /// The full tree `ω^{<ω}`, i.e. the top condition.
    pub fn full() -> Self {
        Self::with_stem(Node::root())
    }

    /// Every node comparable with `stem`, no further constraints.
    pub fn with_stem(stem: Node) -> Self {
        HechlerCondition {
            stem,
            exclusions: BTreeMap::new(),
            floor: None,
        }
    }

    /// Builds a condition, rejecting exclusion keys that do not extend the
    /// stem. Empty exclusion sets are dropped.
    pub fn new(
        stem: Node,
        exclusions: BTreeMap<Node, BTreeSet<Nat>>,
        floor: Option<FloorRule>,
    ) -> Result<Self, ConditionError> {
        if let Some(key) = exclusions.keys().find(|k| !stem.is_prefix_of(k)) {
            return Err(ConditionError::KeyBelowStem { key: key.clone(), stem });
        }
        let exclusions = exclusions.into_iter().filter(|(_, zs)| !zs.is_empty()).collect();
        Ok(HechlerCondition {
            stem,
            exclusions,
            floor,
        })
    }

    /// Adds an exclusion atom at `node`, which must extend the stem.
    pub fn exclude(mut self, node: Node, zs: impl IntoIterator<Item = Nat>) -> Result<Self, ConditionError> {
        if !self.stem.is_prefix_of(&node) {
            return Err(ConditionError::KeyBelowStem {
                key: node,
                stem: self.stem,
            });
        }
        let set = self.exclusions.entry(node.clone()).or_default();
        set.extend(zs);
        if set.is_empty() {
            self.exclusions.remove(&node);
        }
        Ok(self)
    }

    /// Replaces the floor rule.
    pub fn with_floor(mut self, floor: FloorRule) -> Self {
        self.floor = Some(floor);
        self
    }

    pub fn stem(&self) -> &Node {
        &self.stem
    }

    pub fn exclusions(&self) -> &BTreeMap<Node, BTreeSet<Nat>> {
        &self.exclusions
    }

    pub fn floor(&self) -> Option<&FloorRule> {
        self.floor.as_ref()
    }

    /// Stem self-consistent and every exclusion key extends the stem.
    ///
    /// Constructors enforce this; it is exposed for property tests.
    pub fn is_well_formed(&self) -> bool {
        self.exclusions
            .iter()
            .all(|(k, zs)| self.stem.is_prefix_of(k) && !zs.is_empty())
            && self.contains(&self.stem)
    }

    /// Whether the step from `v` (a node at or above the stem) to `v⌢z` is
    /// allowed by the constraints.
    pub fn allows_step(&self, v: &[Nat], z: &Nat) -> bool {
        if let Some(zs) = self.exclusions.get(v) {
            if zs.contains(z) {
                return false;
            }
        }
        match &self.floor {
            Some(f) => *z > f.eval(v.len()),
            None => true,
        }
    }

    pub fn contains(&self, u: &Node) -> bool {
        if !u.is_comparable(&self.stem) {
            return false;
        }
        let entries = u.entries();
        (self.stem.len()..entries.len()).all(|i| self.allows_step(&entries[..i], &entries[i]))
    }

    /// The exact finite set `{z : t⌢z ∉ T}` for a node `t ⊒ stem` of `T`.
    pub fn excluded_successors(&self, t: &Node) -> Result<BTreeSet<Nat>, ConditionError> {
        self.check_above_stem(t)?;
        let mut out = self.exclusions.get(t).cloned().unwrap_or_default();
        if let Some(f) = &self.floor {
            let top = f.eval(t.len());
            let mut z = Nat::zero();
            while z <= top {
                out.insert(z.clone());
                z += 1u32;
            }
        }
        Ok(out)
    }

    fn check_above_stem(&self, t: &Node) -> Result<(), ConditionError> {
        if !self.contains(t) {
            return Err(ConditionError::NotInTree(t.clone()));
        }
        if !self.stem.is_prefix_of(t) {
            return Err(ConditionError::BelowStem {
                node: t.clone(),
                stem: self.stem.clone(),
            });
        }
        Ok(())
    }

    /// The least `z` with `v⌢z` allowed and `skip(z)` false.
    ///
    /// Terminates whenever `skip` holds for finitely many `z`: the allowed
    /// steps are cofinite.
    pub fn least_successor(&self, v: &[Nat], mut skip: impl FnMut(&Nat) -> bool) -> Nat {
        let mut z = match &self.floor {
            Some(f) => f.eval(v.len()) + 1u32,
            None => Nat::zero(),
        };
        while !self.allows_step(v, &z) || skip(&z) {
            z += 1u32;
        }
        z
    }

    /// `T↾t`: the nodes of `T` comparable with `t`.
    ///
    /// For `t` at or above the stem this moves the stem up to `t` and drops
    /// the exclusion atoms that no longer constrain anything; for `t` below
    /// the stem the tree is unchanged.
    pub fn restrict(&self, t: &Node) -> Result<Self, ConditionError> {
        if !self.contains(t) {
            return Err(ConditionError::NotInTree(t.clone()));
        }
        if t.is_prefix_of(&self.stem) {
            return Ok(self.clone());
        }
        let exclusions = self
            .exclusions
            .iter()
            .filter(|(k, _)| t.is_prefix_of(k))
            .map(|(k, zs)| (k.clone(), zs.clone()))
            .collect();
        Ok(HechlerCondition {
            stem: t.clone(),
            exclusions,
            floor: self.floor.clone(),
        })
    }

    /// `T1 ∩ T2`, or `None` when the longer stem is cut off by the other
    /// condition's constraints.
    pub fn meet(&self, other: &Self) -> Result<Option<Self>, ConditionError> {
        if !self.stem.is_comparable(&other.stem) {
            return Err(ConditionError::IncomparableStems(self.stem.clone(), other.stem.clone()));
        }
        let stem = if self.stem.len() >= other.stem.len() {
            &self.stem
        } else {
            &other.stem
        };
        if !self.contains(stem) || !other.contains(stem) {
            return Ok(None);
        }
        let mut exclusions: BTreeMap<Node, BTreeSet<Nat>> = BTreeMap::new();
        for (k, zs) in self.exclusions.iter().chain(other.exclusions.iter()) {
            if stem.is_prefix_of(k) {
                exclusions.entry(k.clone()).or_default().extend(zs.iter().cloned());
            }
        }
        let floor = match (&self.floor, &other.floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (Some(f), None) | (None, Some(f)) => Some(f.clone()),
            (None, None) => None,
        };
        Ok(Some(HechlerCondition {
            stem: stem.clone(),
            exclusions,
            floor,
        }))
    }

    /// Decides `self ⊆ other` (i.e. `self ≤ other`).
    ///
    /// The test is complete for presented conditions: `No` always carries a
    /// node of `self ∖ other`. `Unknown` is returned only when the first
    /// violated level is too far above the stem to build a witness.
    pub fn extends(&self, other: &Self) -> Extends {
        let s2 = &self.stem;
        if !other.contains(s2) {
            return Extends::No(s2.clone());
        }
        if !other.stem.is_prefix_of(s2) {
            // `self` branches at its stem while `other` is still a single path.
            let forced = &other.stem.entries()[s2.len()];
            let z = self.least_successor(s2.entries(), |z| z == forced);
            return Extends::No(s2.child(z));
        }
        for (v, zs) in other.exclusions.range(s2.clone()..) {
            if !s2.is_prefix_of(v) {
                break;
            }
            if !self.contains(v) {
                continue;
            }
            if let Some(z) = zs.iter().find(|z| self.allows_step(v.entries(), z)) {
                return Extends::No(v.child(z.clone()));
            }
        }
        let Some(f1) = &other.floor else {
            return Extends::Yes;
        };
        // At the stem itself only one node sits on the level, so its own
        // exclusions may cover the floor.
        let level = s2.len();
        let top = f1.eval(level);
        let mut z = match &self.floor {
            Some(f2) => f2.eval(level) + 1u32,
            None => Nat::zero(),
        };
        if let Some(zs) = self.exclusions.get(s2) {
            for e in zs.range(z.clone()..) {
                if *e != z {
                    break;
                }
                z += 1u32;
            }
        }
        if z <= top {
            return Extends::No(s2.child(z));
        }
        // Higher levels have infinitely many unconstrained nodes, so the floor
        // itself must dominate.
        let shortfall = match &self.floor {
            Some(f2) => f2.first_shortfall(f1, level + 1),
            None => Some(Nat::from(level + 1)),
        };
        let Some(bad) = shortfall else {
            return Extends::Yes;
        };
        match bad.to_usize() {
            Some(bad) if bad - level <= MAX_WITNESS_DEPTH => {
                let v = self.unconstrained_path(bad);
                Extends::No(v.child(f1.eval(bad)))
            }
            _ => Extends::Unknown,
        }
    }

    /// A node of `self` at `level` (above the stem) that is not an exclusion
    /// key, reached from the stem by least allowed steps that leave every key.
    fn unconstrained_path(&self, level: usize) -> Node {
        let mut key_prefixes: BTreeSet<Node> = BTreeSet::new();
        for k in self.exclusions.keys() {
            for len in self.stem.len() + 1..=k.len() {
                key_prefixes.insert(k.prefix(len));
            }
        }
        let mut v = self.stem.clone();
        while v.len() < level {
            let z = self.least_successor(v.entries(), |z| key_prefixes.contains(&v.child(z.clone())));
            v.push(z);
        }
        v
    }

    /// Exhaustive refutation search: the first node (lexicographic preorder)
    /// of length `≤ depth` with entries `≤ width` lying in `self ∖ other`.
    ///
    /// Subtrees hanging off a node by a step that leads to no stem or key of
    /// either tree are all isomorphic, so only the first of them is visited.
    pub fn extends_bounded(&self, other: &Self, depth: usize, width: u64) -> Bounded {
        let mut special: BTreeSet<Node> = BTreeSet::new();
        let anchors = [&self.stem, &other.stem]
            .into_iter()
            .chain(self.exclusions.keys())
            .chain(other.exclusions.keys());
        for n in anchors {
            for len in 1..=n.len() {
                special.insert(n.prefix(len));
            }
        }
        let root = Node::root();
        match bounded_search(self, other, &special, &root, depth, &Nat::from(width)) {
            Some(w) => Bounded::No(w),
            None => Bounded::ConsistentUpTo,
        }
    }

    /// `self ≤_A other`: inclusion plus `stem(self) ⊒_A stem(other)`.
    pub fn extends_avoiding<M: Membership + ?Sized>(&self, other: &Self, help: &M) -> ExtendsA {
        match self.extends(other) {
            Extends::No(w) => ExtendsA::No(AvoidFailure::Inclusion(w)),
            Extends::Unknown => ExtendsA::Unknown,
            Extends::Yes if stem_extends_avoiding(&self.stem, &other.stem, help) => ExtendsA::Yes,
            Extends::Yes => ExtendsA::No(AvoidFailure::StemAvoidance),
        }
    }
}

fn bounded_search(
    t2: &HechlerCondition,
    t1: &HechlerCondition,
    special: &BTreeSet<Node>,
    u: &Node,
    depth: usize,
    width: &Nat,
) -> Option<Node> {
    let mut generic_done = false;
    let mut z = Nat::zero();
    while z <= *width {
        let c = u.child(z.clone());
        z += Nat::one();
        if !t2.contains(&c) {
            continue;
        }
        if !t1.contains(&c) {
            return Some(c);
        }
        if c.len() >= depth {
            continue;
        }
        if !special.contains(&c) {
            if generic_done {
                continue;
            }
            generic_done = true;
        }
        if let Some(w) = bounded_search(t2, t1, special, &c, depth, width) {
            return Some(w);
        }
    }
    None
}

/// `t2 ⊒_A t1`: `t2` extends `t1` and every new entry avoids `A`.
pub fn stem_extends_avoiding<M: Membership + ?Sized>(t2: &Node, t1: &Node, help: &M) -> bool {
    t1.is_prefix_of(t2) && t2.entries()[t1.len()..].iter().all(|z| !help.is_member(z))
}

/// Canonical text form:
/// `stem=[..];excl{[..]:{..};..};floor(table=[..],a=A,b=B)` (`floor(-)` when
/// absent), keys in lexicographic order and sets ascending.
impl fmt::Display for HechlerCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "stem={};excl{{", self.stem)?;
        for (i, (k, zs)) in self.exclusions.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}:{{")?;
            for (j, z) in zs.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{z}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("};")?;
        match &self.floor {
            Some(rule) => write!(f, "{rule}"),
            None => f.write_str("floor(-)"),
        }
    }
}

#[cfg(test)]
mod tests;
