use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{DenseError, PruningDense, StemDense, StemPattern, StepConstraint, Verdict};
use crate::conditions::{Extends, FloorRule, HechlerCondition, Node};
use crate::Nat;

fn from_extends(e: Extends) -> Verdict {
    match e {
        Extends::Yes => Verdict::Yes,
        Extends::No(w) => Verdict::No(Some(w)),
        Extends::Unknown => Verdict::Unknown,
    }
}

fn naturals_from(start: Nat) -> impl Iterator<Item = Nat> {
    core::iter::successors(Some(start), |z| Some(z + 1u32))
}

/// Stems of length at least `n`. Rank of `t` is `max(0, n − |t|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemLength(pub usize);

impl StemDense for StemLength {
    fn member_witness(&self, s: &Node) -> Option<HechlerCondition> {
        (s.len() >= self.0).then(|| HechlerCondition::with_stem(s.clone()))
    }

    fn good_successors(&self, _: &Node) -> Box<dyn Iterator<Item = Nat> + '_> {
        Box::new(naturals_from(Nat::zero()))
    }

    fn member(&self, t: &HechlerCondition) -> Verdict {
        if t.stem().len() >= self.0 {
            Verdict::Yes
        } else {
            Verdict::No(None)
        }
    }
}

/// Stems with some entry `≥ k`. Rank is 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemHits(pub Nat);

impl StemDense for StemHits {
    fn member_witness(&self, s: &Node) -> Option<HechlerCondition> {
        s.entries()
            .iter()
            .any(|z| *z >= self.0)
            .then(|| HechlerCondition::with_stem(s.clone()))
    }

    fn good_successors(&self, _: &Node) -> Box<dyn Iterator<Item = Nat> + '_> {
        Box::new(naturals_from(self.0.clone()))
    }

    fn member(&self, t: &HechlerCondition) -> Verdict {
        if self.member_witness(t.stem()).is_some() {
            Verdict::Yes
        } else {
            Verdict::No(None)
        }
    }
}

/// Conditions whose every step above the stem clears the floor `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dominate(pub FloorRule);

impl PruningDense for Dominate {
    fn refine(&self, t: &HechlerCondition) -> HechlerCondition {
        let floor = match t.floor() {
            Some(g) => g.max(&self.0),
            None => self.0.clone(),
        };
        t.clone().with_floor(floor)
    }

    fn member(&self, t: &HechlerCondition) -> Verdict {
        let target = HechlerCondition::with_stem(t.stem().clone()).with_floor(self.0.clone());
        from_extends(t.extends(&target))
    }
}

/// Dense set given by user stem patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserStems {
    patterns: Vec<StemPattern>,
}

impl UserStems {
    pub fn new(patterns: Vec<StemPattern>) -> Result<Self, DenseError> {
        if patterns.is_empty() {
            return Err(DenseError::NoPatterns);
        }
        let bad_residue = patterns.iter().flat_map(|p| &p.steps).any(|c| match c {
            StepConstraint::Residue { modulus, residue } => modulus.is_zero() || residue >= modulus,
            _ => false,
        });
        if bad_residue {
            return Err(DenseError::BadResidue);
        }
        Ok(UserStems { patterns })
    }

    pub fn patterns(&self) -> &[StemPattern] {
        &self.patterns
    }

    /// Number of constraints of `p` left unmatched by a greedy left-to-right
    /// subsequence match against `s`.
    fn remaining(p: &StemPattern, s: &Node) -> usize {
        let mut next = 0;
        for z in s.entries() {
            if next < p.steps.len() && p.steps[next].admits(z) {
                next += 1;
            }
        }
        p.steps.len() - next
    }

    fn witness_for(p: &StemPattern, s: &Node) -> HechlerCondition {
        let w = HechlerCondition::with_stem(s.clone());
        match &p.floor {
            Some(f) => w.with_floor(f.clone()),
            None => w,
        }
    }
}

impl StemDense for UserStems {
    fn member_witness(&self, s: &Node) -> Option<HechlerCondition> {
        self.patterns
            .iter()
            .find(|p| Self::remaining(p, s) == 0)
            .map(|p| Self::witness_for(p, s))
    }

    fn good_successors(&self, s: &Node) -> Box<dyn Iterator<Item = Nat> + '_> {
        let closest = self
            .patterns
            .iter()
            .map(|p| (Self::remaining(p, s), p))
            .filter(|(r, _)| *r > 0)
            .min_by_key(|(r, _)| *r);
        match closest {
            Some((r, p)) => p.steps[p.steps.len() - r].values(),
            None => Box::new(core::iter::empty()),
        }
    }

    fn member(&self, t: &HechlerCondition) -> Verdict {
        let mut unknown = false;
        for p in self.patterns.iter().filter(|p| Self::remaining(p, t.stem()) == 0) {
            match t.extends(&Self::witness_for(p, t.stem())) {
                Extends::Yes => return Verdict::Yes,
                Extends::Unknown => unknown = true,
                Extends::No(_) => {}
            }
        }
        if unknown {
            Verdict::Unknown
        } else {
            Verdict::No(None)
        }
    }
}
