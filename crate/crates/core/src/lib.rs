//! Finite, decidable machinery for coding a target sequence into a
//! Tree-Hechler generic with the help of an auxiliary set.
//!
//! The crate is organised bottom-up:
//!
//! - [`conditions`]: finitely presented Tree-Hechler conditions (stem,
//!   per-node exclusions, a level-wise floor), with membership, restriction,
//!   meets and the orders `≤` and `≤_A`.
//! - [`coding`]: the fiber function θ, help sets `A` with their enumeration
//!   `e_A` and labelling `η_A`, the prime-power self-coding set, and the
//!   decoder reading a target back out of `g`.
//! - [`densesets`]: dense open sets as runtime objects, reachability ranks,
//!   the `≤_A` search that meets a dense set without touching `A`, and the
//!   single coding step.
//! - [`generic`]: the interleaved builder producing a run transcript and an
//!   independent transcript verifier.
//! - [`cohenpair`]: coding a binary target into a pair of individually
//!   Cohen-generic binary strings.
//!
//! Everything is pure and deterministic; the crate needs only `alloc`.
#![no_std]

extern crate alloc;

pub mod coding;
pub mod cohenpair;
pub mod conditions;
pub mod densesets;
pub mod generic;
mod primes;
pub mod report;

/// Natural numbers. Stem entries, help-set elements and floor values are
/// unbounded, so everything that can be an element of ω is a big integer.
pub type Nat = num_bigint::BigUint;

/// Default search budget for the scanning loops (`extend_in_a`,
/// `code_step`, subset recovery).
pub const DEFAULT_FUEL: u64 = 100_000;

pub use coding::{EventuallyPeriodicSeq, HelpSet, Membership, NoHelp};
pub use conditions::{Extends, FloorRule, HechlerCondition, Node};
pub use densesets::{DenseSet, DenseSpec, Verdict};
pub use report::VerificationReport;
