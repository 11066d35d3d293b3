//! Coding values into `g` through a help set `A`.
//!
//! A value `m` is written into `g` by placing some `z ∈ A` with `η_A(z) = m`,
//! where `η_A = θ ∘ e_A⁻¹` and `θ` has infinite fibers. Positions where `g`
//! misses `A` carry no information. The decoder needs nothing but membership
//! queries to `A`, indices in `A`'s enumeration, and the values of `g`.

mod help;
mod selfcode;
mod seq;

use alloc::vec::Vec;

use thiserror::Error;

use crate::Nat;

pub use help::{HelpKind, HelpSet, Membership, NoHelp, MAX_SELFCODE_DIGIT};
pub use selfcode::{decode_prefix_code, prefix_code, recover_from_subset, selfcode_element, RecoverError};
pub use seq::{EmptyCycle, EventuallyPeriodicSeq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("{0} is not a member of the help set")]
    NotAMember(Nat),
    #[error("index {0} of the help set is out of reach")]
    IndexOutOfReach(u64),
    #[error("position of {0} in the help set is out of reach")]
    ValueOutOfReach(Nat),
    #[error("fiber element ({m}, {k}) overflows the index range")]
    IndexOverflow { m: u64, k: u64 },
    #[error("invalid help set: {0}")]
    InvalidHelpSet(&'static str),
}

/// `θ(n)`: the 2-adic valuation of `n + 1`. Every fiber is infinite.
pub fn theta(n: u64) -> u64 {
    (u128::from(n) + 1).trailing_zeros() as u64
}

/// The `k`-th element of `θ⁻¹(m)`, namely `(2k+1)·2^m − 1`; `None` when it
/// does not fit in a `u64`.
pub fn theta_fiber(m: u64, k: u64) -> Option<u64> {
    let odd = k.checked_mul(2)?.checked_add(1)?;
    let shift = u32::try_from(m).ok().filter(|&m| m < 64)?;
    odd.checked_mul(1u64 << shift)?.checked_sub(1)
}

/// `η_A(z) = θ(e_A⁻¹(z))` for `z ∈ A`.
pub fn eta(help: &HelpSet, z: &Nat) -> Result<u64, CodingError> {
    Ok(theta(help.index_of(z)?))
}

/// The `k`-th smallest `z ∈ A` with `η_A(z) = m`.
pub fn eta_fiber_element(help: &HelpSet, m: u64, k: u64) -> Result<Nat, CodingError> {
    let index = theta_fiber(m, k).ok_or(CodingError::IndexOverflow { m, k })?;
    help.element(index)
}

/// The least `k` with `θ_fiber(m, k) ≥ index`.
pub(crate) fn first_fiber_rank_from(m: u64, index: u64) -> u64 {
    // (2k+1)·2^m − 1 ≥ index  ⇔  2k+1 ≥ ⌈(index+1) / 2^m⌉
    if m >= 64 {
        return 0;
    }
    let need = (u128::from(index) + 1).div_ceil(1u128 << m);
    (need.saturating_sub(1).div_ceil(2)) as u64
}

/// Reads the coded sequence out of a prefix of `g`: the labels `η_A(g(n))`
/// at the positions `n` where `g(n) ∈ A`, in order.
///
/// For a finite prefix there is no "infinitely many misses" case; the hits
/// seen so far are returned.
pub fn decode(help: &HelpSet, g: &[Nat]) -> Result<Vec<u64>, CodingError> {
    g.iter().filter(|z| help.is_member(z)).map(|z| eta(help, z)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("found {found} of {wanted} elements within {fuel} candidates")]
pub struct StickingOutExhausted {
    pub wanted: usize,
    pub found: usize,
    pub fuel: u64,
}

/// The first `count` elements of `B ∖ A`, scanning at most `fuel` elements
/// of the ascending stream `b`.
pub fn sticking_out<I, M>(b: I, help: &M, count: usize, fuel: u64) -> Result<Vec<Nat>, StickingOutExhausted>
where
    I: IntoIterator<Item = Nat>,
    M: Membership + ?Sized,
{
    let mut out = Vec::with_capacity(count);
    for z in b.into_iter().take(usize::try_from(fuel).unwrap_or(usize::MAX)) {
        if out.len() == count {
            break;
        }
        if !help.is_member(&z) {
            out.push(z);
        }
    }
    if out.len() < count {
        return Err(StickingOutExhausted {
            wanted: count,
            found: out.len(),
            fuel,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn nats(xs: &[u64]) -> Vec<Nat> {
        xs.iter().map(|&x| Nat::from(x)).collect()
    }

    #[test]
    fn theta_values() {
        assert_eq!(theta(0), 0);
        assert_eq!(theta(3), 2);
        // 12 = 0b1100
        assert_eq!(theta(11), 2);
        assert_eq!(theta(u64::MAX), 64);
    }

    #[test]
    fn theta_fibers_against_filtering() {
        for m in 0..4u64 {
            let brute: Vec<u64> = (0..200u64).filter(|&n| theta(n) == m).take(5).collect();
            let closed: Vec<u64> = (0..5).map(|k| theta_fiber(m, k).unwrap()).collect();
            assert_eq!(brute, closed, "m = {m}");
        }
        assert_eq!(theta_fiber(0, 0), Some(0));
        assert_eq!(theta_fiber(1, 0), Some(1));
        assert_eq!(theta_fiber(1, 1), Some(5));
        assert_eq!(theta_fiber(2, 1), Some(11));
        assert_eq!(theta_fiber(63, 0), Some((1 << 63) - 1));
        assert_eq!(theta_fiber(63, 1), None);
        assert_eq!(theta_fiber(64, 0), None);
    }

    #[test]
    fn first_fiber_rank_is_tight() {
        for m in 0..6u64 {
            for index in 0..200u64 {
                let k = first_fiber_rank_from(m, index);
                assert!(theta_fiber(m, k).unwrap() >= index);
                if k > 0 {
                    assert!(theta_fiber(m, k - 1).unwrap() < index);
                }
            }
        }
    }

    #[test]
    fn eta_examples() {
        let evens = HelpSet::evens();
        assert_eq!(eta(&evens, &Nat::from(0u32)), Ok(0));
        assert_eq!(eta(&evens, &Nat::from(2u32)), Ok(1));
        assert_eq!(eta(&HelpSet::primes(), &Nat::from(7u32)), Ok(2));
        assert!(matches!(eta(&evens, &Nat::from(3u32)), Err(CodingError::NotAMember(_))));
    }

    #[test]
    fn fiber_element_examples() {
        let evens = HelpSet::evens();
        assert_eq!(eta_fiber_element(&evens, 1, 0), Ok(Nat::from(2u32)));
        assert_eq!(eta_fiber_element(&evens, 1, 1), Ok(Nat::from(10u32)));
        assert_eq!(eta_fiber_element(&evens, 0, 0), Ok(Nat::from(0u32)));
        assert_eq!(eta_fiber_element(&HelpSet::primes(), 0, 1), Ok(Nat::from(5u32)));
    }

    #[test]
    fn decode_examples() {
        let evens = HelpSet::evens();
        assert_eq!(decode(&evens, &nats(&[5, 2, 7, 6])), Ok(vec![1, 2]));
        assert_eq!(decode(&evens, &nats(&[1, 3, 5])), Ok(vec![]));
        assert_eq!(decode(&evens, &nats(&[0])), Ok(vec![0]));
    }

    #[test]
    fn sticking_out_reports_starvation() {
        let evens = HelpSet::evens();
        let only_evens = (0u64..).map(|n| Nat::from(2 * n));
        let err = sticking_out(only_evens, &evens, 3, 50).unwrap_err();
        assert_eq!(err.found, 0);
        let odds = sticking_out((0u64..).map(Nat::from), &evens, 3, 50).unwrap();
        assert_eq!(odds, nats(&[1, 3, 5]));
    }
}
