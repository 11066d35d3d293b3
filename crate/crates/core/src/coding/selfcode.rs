//! The prime-power prefix code behind self-coding help sets.
//!
//! `code(s) = ∏_{i<|s|} p_i^{s(i)+1}`. Codes of longer prefixes are strictly
//! larger, and a single code decodes back to the whole prefix, so the set of
//! codes of the prefixes of `ā` can be recomputed from any infinite subset of
//! itself.

use alloc::vec::Vec;

use num_traits::One;
use thiserror::Error;

use super::EventuallyPeriodicSeq;
use crate::primes::{first_primes, strip_factor, PrimeIter};
use crate::Nat;

pub fn prefix_code(prefix: &[u64]) -> Nat {
    first_primes(prefix.len())
        .into_iter()
        .zip(prefix)
        .fold(Nat::one(), |acc, (p, &s)| {
            acc * Nat::from(p).pow(u32::try_from(s + 1).expect("self-code digit out of range"))
        })
}

/// Inverts [`prefix_code`]: `None` unless `n` is a product of positive
/// powers of an initial run of primes `2, 3, 5, ...`.
pub fn decode_prefix_code(n: &Nat) -> Option<Vec<u64>> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    for p in PrimeIter::default() {
        let e = strip_factor(&mut rest, p);
        if e == 0 {
            break;
        }
        out.push(e - 1);
    }
    (rest.is_one() && !out.is_empty()).then_some(out)
}

/// The `n`-th element (ascending) of the self-coding set of `abar`:
/// `code(ā↾(n+1))`.
pub fn selfcode_element(abar: &EventuallyPeriodicSeq, n: u64) -> Nat {
    let len = usize::try_from(n + 1).expect("self-code index out of range");
    prefix_code(&abar.take(len))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoverError {
    #[error("no element decoding to {wanted} entries within {spent} elements")]
    FuelExhausted { wanted: usize, spent: u64 },
    #[error("stream ended before an element decoding to {wanted} entries")]
    StreamEnded { wanted: usize },
    #[error("{0} is not a prime-power prefix code")]
    Malformed(Nat),
}

/// Recovers `ā↾n` from any infinite subset of the self-coding set of `ā`,
/// presented as an ascending stream.
///
/// Elements are decoded one by one until one encodes a prefix of length at
/// least `n`; every element consumed counts against `fuel`.
pub fn recover_from_subset<I>(elements: I, n: usize, fuel: u64) -> Result<Vec<u64>, RecoverError>
where
    I: IntoIterator<Item = Nat>,
{
    if n == 0 {
        return Ok(Vec::new());
    }
    for (spent, z) in (0u64..).zip(elements) {
        if spent >= fuel {
            return Err(RecoverError::FuelExhausted { wanted: n, spent });
        }
        let mut prefix = decode_prefix_code(&z).ok_or(RecoverError::Malformed(z))?;
        if prefix.len() >= n {
            prefix.truncate(n);
            return Ok(prefix);
        }
    }
    Err(RecoverError::StreamEnded { wanted: n })
}
