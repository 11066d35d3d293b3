//! Dense open subsets of the Tree-Hechler poset and the search that meets
//! them.
//!
//! A dense set is either *stem based* (membership is decided by the stem,
//! and a witness condition exists for every qualifying stem) or *pruning*
//! (any condition can be shrunk into the set without moving its stem).
//!
//! Stem-based sets also enumerate *good successors*: for a node whose stem
//! is not yet in the set, an unbounded ascending list of steps each of which
//! lowers the reachability rank by one. The search in [`extend_in_a`] relies on
//! that contract together with the fact that the help set is co-infinite, so
//! some good successor is both allowed by the condition and outside `A`.

mod builtin;
mod search;

use alloc::boxed::Box;
use alloc::vec::Vec;

use thiserror::Error;

use crate::conditions::{FloorRule, HechlerCondition, Node};
use crate::Nat;

pub use builtin::{Dominate, StemHits, StemLength, UserStems};
pub use search::{code_step, extend_in_a, rank_bounded, SearchError, RANK_VISIT_BUDGET};

/// Three-valued membership answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    /// Not a member; a node of the condition witnessing the violation when
    /// one is available.
    No(Option<Node>),
    Unknown,
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }
}

/// One position of a user stem pattern: which values may fill it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StepConstraint {
    AtLeast(Nat),
    /// `z ≡ residue (mod modulus)`.
    Residue {
        modulus: Nat,
        residue: Nat,
    },
    Exactly(Nat),
    AtMost(Nat),
}

impl StepConstraint {
    pub fn admits(&self, z: &Nat) -> bool {
        match self {
            StepConstraint::AtLeast(k) => z >= k,
            StepConstraint::Residue { modulus, residue } => z % modulus == *residue,
            StepConstraint::Exactly(c) => z == c,
            StepConstraint::AtMost(k) => z <= k,
        }
    }

    /// Ascending enumeration of the admitted values. Finite for `Exactly`
    /// and `AtMost`, which is what makes such patterns dishonest.
    pub fn values(&self) -> Box<dyn Iterator<Item = Nat> + Send> {
        match self.clone() {
            StepConstraint::AtLeast(k) => Box::new(core::iter::successors(Some(k), |z| Some(z + 1u32))),
            StepConstraint::Residue { modulus, residue } => {
                Box::new(core::iter::successors(Some(residue), move |z| Some(z + &modulus)))
            }
            StepConstraint::Exactly(c) => Box::new(core::iter::once(c)),
            StepConstraint::AtMost(k) => {
                Box::new(core::iter::successors(Some(Nat::from(0u32)), |z| Some(z + 1u32)).take_while(move |z| *z <= k))
            }
        }
    }
}

/// A user-supplied family of stems: `s` qualifies when the constraints can
/// be matched, in order, by a subsequence of `s`'s entries. The witness for a
/// qualifying stem carries the optional floor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StemPattern {
    pub steps: Vec<StepConstraint>,
    pub floor: Option<FloorRule>,
}

/// Declarative description of a dense open set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DenseSpec {
    /// `{T : |Stem(T)| ≥ n}`.
    StemLength(usize),
    /// `{T : every step z out of a node of level ℓ ⊒ Stem(T) has z > f(ℓ)}`.
    Dominate(FloorRule),
    /// `{T : some stem entry is ≥ k}`.
    StemHits(Nat),
    /// Union over the patterns of `{T : Stem(T) matches p, T ⊆ witness_p}`.
    UserStems(Vec<StemPattern>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("user stem set needs at least one pattern")]
    NoPatterns,
    #[error("residue constraint needs a positive modulus above the residue")]
    BadResidue,
}

/// A stem-based dense set.
pub trait StemDense: Send + Sync {
    /// A condition of the set with stem exactly `s`, if `s` qualifies.
    fn member_witness(&self, s: &Node) -> Option<HechlerCondition>;

    /// Ascending steps out of `s` that each lower the rank by one.
    fn good_successors(&self, s: &Node) -> Box<dyn Iterator<Item = Nat> + '_>;

    fn member(&self, t: &HechlerCondition) -> Verdict;
}

/// A dense set met by shrinking a condition below its stem.
pub trait PruningDense: Send + Sync {
    /// A member of the set with the same stem, included in `t`.
    fn refine(&self, t: &HechlerCondition) -> HechlerCondition;

    fn member(&self, t: &HechlerCondition) -> Verdict;
}

/// Runtime dense set.
pub enum DenseSet {
    StemBased(Box<dyn StemDense>),
    Pruning(Box<dyn PruningDense>),
}

impl DenseSet {
    pub fn from_spec(spec: &DenseSpec) -> Result<Self, DenseError> {
        Ok(match spec {
            DenseSpec::StemLength(n) => DenseSet::StemBased(Box::new(StemLength(*n))),
            DenseSpec::StemHits(k) => DenseSet::StemBased(Box::new(StemHits(k.clone()))),
            DenseSpec::Dominate(f) => DenseSet::Pruning(Box::new(Dominate(f.clone()))),
            DenseSpec::UserStems(patterns) => DenseSet::StemBased(Box::new(UserStems::new(patterns.clone())?)),
        })
    }

    pub fn member(&self, t: &HechlerCondition) -> Verdict {
        match self {
            DenseSet::StemBased(d) => d.member(t),
            DenseSet::Pruning(d) => d.member(t),
        }
    }
}

impl core::fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DenseSet::StemBased(_) => f.write_str("DenseSet::StemBased(..)"),
            DenseSet::Pruning(_) => f.write_str("DenseSet::Pruning(..)"),
        }
    }
}

/// Builds the runtime roster for a list of specs.
pub fn roster(specs: &[DenseSpec]) -> Result<Vec<DenseSet>, DenseError> {
    specs.iter().map(DenseSet::from_spec).collect()
}
