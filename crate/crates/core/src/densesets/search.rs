use thiserror::Error;

use super::{DenseSet, StemDense};
use crate::coding::{eta_fiber_element, first_fiber_rank_from, CodingError, HelpSet, Membership};
use crate::conditions::{Extends, HechlerCondition, Node};

/// Node visits allowed to a single [`rank_bounded`] call.
pub const RANK_VISIT_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("fuel exhausted at node {node} after {spent} candidates{}", if *.starved { " (enumeration ended)" } else { "" })]
    FuelExhausted { node: Node, spent: u64, starved: bool },
    #[error("witness for stem {expected} has stem {found}")]
    WitnessStemMismatch { expected: Node, found: Node },
    #[error("pruning refinement moved the stem or left the condition")]
    RefineContract,
    #[error(transparent)]
    Coding(#[from] CodingError),
}

/// Reachability rank of `t` for a stem-based dense set.
///
/// Explores good successors depth first, at most `width` per node and at
/// most `max_rank` levels deep, and returns the length of the first descent
/// that reaches a qualifying stem. Every good successor lowers the rank by
/// exactly one, so for honest sets that length is the rank itself. `None`
/// means no descent was found within the bounds (or within
/// [`RANK_VISIT_BUDGET`] visits).
pub fn rank_bounded(d: &dyn StemDense, t: &Node, max_rank: usize, width: usize) -> Option<usize> {
    let mut visits = 0;
    descend(d, t, max_rank, width, &mut visits)
}

fn descend(d: &dyn StemDense, t: &Node, max_rank: usize, width: usize, visits: &mut usize) -> Option<usize> {
    *visits += 1;
    if d.member_witness(t).is_some() {
        return Some(0);
    }
    if max_rank == 0 {
        return None;
    }
    for z in d.good_successors(t).take(width) {
        if *visits >= RANK_VISIT_BUDGET {
            return None;
        }
        if let Some(r) = descend(d, &t.child(z), max_rank - 1, width, visits) {
            return Some(r + 1);
        }
    }
    None
}

/// Finds `T″ ≤_A T` inside `D`.
///
/// Pruning sets refine `T` in place (stem untouched). For stem-based sets
/// the stem is walked upward: at a qualifying node the witness is met with
/// `T` restricted there; otherwise the least good successor that `T` allows
/// and that lies outside `A` is taken. Each scanned candidate costs one unit
/// of `fuel`, which only runs out when the dense set breaks its contract.
pub fn extend_in_a<M>(t: &HechlerCondition, d: &DenseSet, help: &M, fuel: u64) -> Result<HechlerCondition, SearchError>
where
    M: Membership + ?Sized,
{
    let d = match d {
        DenseSet::Pruning(p) => {
            let refined = p.refine(t);
            if refined.stem() != t.stem() || refined.extends(t) != Extends::Yes {
                return Err(SearchError::RefineContract);
            }
            return Ok(refined);
        }
        DenseSet::StemBased(d) => d,
    };
    let mut node = t.stem().clone();
    let mut spent = 0u64;
    loop {
        if let Some(w) = d.member_witness(&node) {
            if *w.stem() != node {
                return Err(SearchError::WitnessStemMismatch {
                    expected: node,
                    found: w.stem().clone(),
                });
            }
            let here = t.restrict(&node).expect("descent only takes allowed steps");
            let met = w.meet(&here).expect("equal stems are comparable");
            return Ok(met.expect("a stem always survives its own conditions"));
        }
        let mut next = None;
        for z in d.good_successors(&node) {
            if spent >= fuel {
                return Err(SearchError::FuelExhausted {
                    node,
                    spent,
                    starved: false,
                });
            }
            spent += 1;
            if t.allows_step(node.entries(), &z) && !help.is_member(&z) {
                next = Some(z);
                break;
            }
        }
        match next {
            Some(z) => node.push(z),
            None => {
                return Err(SearchError::FuelExhausted {
                    node,
                    spent,
                    starved: spent < fuel,
                })
            }
        }
    }
}

/// Extends the stem by one entry coding `m`: the least `z ∈ A` with
/// `η_A(z) = m` that `T` allows. The result is `≤ T` but deliberately not
/// `≤_A T`.
pub fn code_step(t: &HechlerCondition, help: &HelpSet, m: u64, fuel: u64) -> Result<HechlerCondition, SearchError> {
    let stem = t.stem();
    // Fiber elements at or below the floor are never allowed; skip them.
    let start = match t.floor() {
        Some(f) => first_fiber_rank_from(m, help.count_up_to(&f.eval(stem.len()))?),
        None => 0,
    };
    for (spent, k) in (start..).enumerate() {
        if spent as u64 >= fuel {
            return Err(SearchError::FuelExhausted {
                node: stem.clone(),
                spent: spent as u64,
                starved: false,
            });
        }
        let z = eta_fiber_element(help, m, k)?;
        if t.allows_step(stem.entries(), &z) {
            return Ok(t.restrict(&stem.child(z)).expect("allowed step stays in the tree"));
        }
    }
    unreachable!("fiber enumeration is unbounded")
}
