use alloc::boxed::Box;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::selfcode::{decode_prefix_code, selfcode_element};
use super::{CodingError, EventuallyPeriodicSeq};
use crate::primes::{is_prime, nth_prime, prime_pi_below, PrimeIter};
use crate::Nat;

/// Largest digit allowed in a self-coding help real; the digit becomes a
/// prime exponent.
pub const MAX_SELFCODE_DIGIT: u64 = 1024;

/// Membership in a subset of ω.
pub trait Membership {
    fn is_member(&self, z: &Nat) -> bool;
}

/// The empty set: with it, `≤_A` collapses to `≤`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NoHelp;

impl Membership for NoHelp {
    fn is_member(&self, _: &Nat) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HelpKind {
    Evens,
    Primes,
    /// The codes of the prefixes of a help real.
    SelfCode(EventuallyPeriodicSeq),
    /// Characteristic pattern: `n ∈ A` iff the pattern is nonzero at `n`.
    Explicit(EventuallyPeriodicSeq),
}

/// An infinite, co-infinite help set `A ⊆ ω` with decidable membership and
/// its strictly increasing enumeration `e_A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HelpSet {
    kind: HelpKind,
}

impl HelpSet {
    pub fn evens() -> Self {
        HelpSet { kind: HelpKind::Evens }
    }

    pub fn primes() -> Self {
        HelpSet { kind: HelpKind::Primes }
    }

    pub fn self_code(abar: EventuallyPeriodicSeq) -> Result<Self, CodingError> {
        let too_big = abar
            .prefix()
            .iter()
            .chain(abar.cycle())
            .any(|&d| d > MAX_SELFCODE_DIGIT);
        if too_big {
            return Err(CodingError::InvalidHelpSet("self-code digits must be at most 1024"));
        }
        Ok(HelpSet {
            kind: HelpKind::SelfCode(abar),
        })
    }

    /// A set given by its eventually periodic characteristic pattern. The
    /// cycle must contain both a member and a non-member so the set is
    /// infinite and co-infinite.
    pub fn explicit(pattern: EventuallyPeriodicSeq) -> Result<Self, CodingError> {
        if pattern.cycle().iter().all(|&b| b == 0) {
            return Err(CodingError::InvalidHelpSet("explicit set is finite"));
        }
        if pattern.cycle().iter().all(|&b| b != 0) {
            return Err(CodingError::InvalidHelpSet("explicit set is cofinite"));
        }
        Ok(HelpSet {
            kind: HelpKind::Explicit(pattern),
        })
    }

    pub fn kind(&self) -> &HelpKind {
        &self.kind
    }

    /// `e_A(n)`: the `n`-th element in ascending order.
    pub fn element(&self, n: u64) -> Result<Nat, CodingError> {
        let too_far = || CodingError::IndexOutOfReach(n);
        match &self.kind {
            HelpKind::Evens => Ok(Nat::from(n) * 2u32),
            HelpKind::Primes => {
                let i = usize::try_from(n).ok().filter(|&i| i < 1 << 24).ok_or_else(too_far)?;
                Ok(Nat::from(nth_prime(i)))
            }
            HelpKind::SelfCode(abar) => {
                if n >= 1 << 20 {
                    return Err(too_far());
                }
                Ok(selfcode_element(abar, n))
            }
            HelpKind::Explicit(pattern) => Ok(explicit_element(pattern, n)),
        }
    }

    /// `e_A⁻¹(z)`: the position of `z` in the enumeration.
    pub fn index_of(&self, z: &Nat) -> Result<u64, CodingError> {
        if !self.is_member(z) {
            return Err(CodingError::NotAMember(z.clone()));
        }
        let too_far = || CodingError::ValueOutOfReach(z.clone());
        match &self.kind {
            HelpKind::Evens => (z / 2u32).to_u64().ok_or_else(too_far),
            HelpKind::Primes => z.to_u64().and_then(prime_pi_below).ok_or_else(too_far),
            HelpKind::SelfCode(_) => {
                let prefix = decode_prefix_code(z).expect("members decode");
                Ok(prefix.len() as u64 - 1)
            }
            HelpKind::Explicit(pattern) => explicit_count_below(pattern, z).ok_or_else(too_far),
        }
    }

    /// The least index whose element exceeds `bound`, i.e. `|A ∩ [0, bound]|`.
    pub fn count_up_to(&self, bound: &Nat) -> Result<u64, CodingError> {
        let too_far = || CodingError::ValueOutOfReach(bound.clone());
        match &self.kind {
            HelpKind::Evens => (bound / 2u32 + 1u32).to_u64().ok_or_else(too_far),
            HelpKind::Primes => bound
                .to_u64()
                .and_then(|b| b.checked_add(1))
                .and_then(prime_pi_below)
                .ok_or_else(too_far),
            HelpKind::SelfCode(_) => {
                let mut n = 0;
                while self.element(n)? <= *bound {
                    n += 1;
                }
                Ok(n)
            }
            HelpKind::Explicit(pattern) => explicit_count_below(pattern, &(bound + 1u32)).ok_or_else(too_far),
        }
    }

    /// Ascending iterator over the elements.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Nat> + '_> {
        match self.kind {
            // One incremental stream instead of a fresh sieve per element.
            HelpKind::Primes => Box::new(PrimeIter::default().take(1 << 24).map(Nat::from)),
            _ => Box::new((0u64..).map_while(move |n| self.element(n).ok())),
        }
    }
}

impl Membership for HelpSet {
    fn is_member(&self, z: &Nat) -> bool {
        match &self.kind {
            HelpKind::Evens => z.is_even(),
            HelpKind::Primes => is_prime(z),
            HelpKind::SelfCode(abar) => match decode_prefix_code(z) {
                Some(prefix) => prefix.iter().zip(abar.iter()).all(|(a, b)| *a == b),
                None => false,
            },
            HelpKind::Explicit(pattern) => match z.to_u64() {
                Some(n) => pattern.at(n) != 0,
                None => {
                    let off = z - Nat::from(pattern.prefix().len());
                    let r = (off % pattern.cycle().len()).to_usize().expect("residue fits");
                    pattern.cycle()[r] != 0
                }
            },
        }
    }
}

fn members(bits: &[u64]) -> Vec<u64> {
    (0..bits.len() as u64).filter(|&i| bits[i as usize] != 0).collect()
}

fn explicit_element(pattern: &EventuallyPeriodicSeq, n: u64) -> Nat {
    let head = members(pattern.prefix());
    if let Some(&z) = usize::try_from(n).ok().and_then(|i| head.get(i)) {
        return Nat::from(z);
    }
    let cyc = members(pattern.cycle());
    let r = n - head.len() as u64;
    let (q, i) = r.div_rem(&(cyc.len() as u64));
    Nat::from(pattern.prefix().len()) + Nat::from(q) * pattern.cycle().len() + cyc[i as usize]
}

/// `|A ∩ [0, z)|`.
fn explicit_count_below(pattern: &EventuallyPeriodicSeq, z: &Nat) -> Option<u64> {
    let plen = pattern.prefix().len();
    let head_len = z.to_usize().map_or(plen, |z| z.min(plen));
    let head = members(&pattern.prefix()[..head_len]).len() as u64;
    if *z <= Nat::from(plen) {
        return Some(head);
    }
    let off = z - Nat::from(plen);
    let (q, r) = off.div_rem(&Nat::from(pattern.cycle().len()));
    let r = r.to_usize()?;
    let per_cycle = members(pattern.cycle()).len() as u64;
    let partial = members(&pattern.cycle()[..r]).len() as u64;
    q.to_u64()?
        .checked_mul(per_cycle)?
        .checked_add(head)?
        .checked_add(partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::Zero;

    fn explicit(prefix: &[u64], cycle: &[u64]) -> HelpSet {
        HelpSet::explicit(EventuallyPeriodicSeq::new(prefix.to_vec(), cycle.to_vec()).unwrap()).unwrap()
    }

    fn all_builtins() -> Vec<HelpSet> {
        vec![
            HelpSet::evens(),
            HelpSet::primes(),
            HelpSet::self_code(EventuallyPeriodicSeq::new(vec![2, 0], vec![1, 3]).unwrap()).unwrap(),
            explicit(&[1, 1, 0], &[0, 0, 1]),
        ]
    }

    #[test]
    fn enumeration_is_strictly_increasing_members() {
        for a in all_builtins() {
            let limit = match a.kind() {
                HelpKind::SelfCode(_) => 40,
                _ => 1000,
            };
            let mut prev: Option<Nat> = None;
            for n in 0..limit {
                let z = a.element(n).unwrap();
                assert!(a.is_member(&z), "{a:?} {n}");
                assert_eq!(a.index_of(&z).unwrap(), n);
                if let Some(p) = &prev {
                    assert!(*p < z);
                }
                prev = Some(z);
            }
        }
    }

    #[test]
    fn counts_agree_with_brute_force() {
        for a in all_builtins() {
            for bound in 0..300u64 {
                let brute = (0..=bound).filter(|&z| a.is_member(&Nat::from(z))).count() as u64;
                assert_eq!(a.count_up_to(&Nat::from(bound)).unwrap(), brute, "{a:?} {bound}");
            }
        }
    }

    #[test]
    fn explicit_sets_must_be_infinite_and_coinfinite() {
        let finite = EventuallyPeriodicSeq::new(vec![1, 1], vec![0]).unwrap();
        let cofinite = EventuallyPeriodicSeq::new(vec![0], vec![1]).unwrap();
        assert!(HelpSet::explicit(finite).is_err());
        assert!(HelpSet::explicit(cofinite).is_err());
    }

    #[test]
    fn explicit_membership_beyond_u64() {
        let odds = explicit(&[], &[0, 1]);
        let big = (Nat::from(1u32) << 100u32) + 1u32;
        assert!(odds.is_member(&big));
        assert!(!odds.is_member(&(big + 1u32)));
    }

    #[test]
    fn self_code_membership_checks_the_help_real() {
        let a = HelpSet::self_code(EventuallyPeriodicSeq::new(vec![2, 0, 1], vec![1]).unwrap()).unwrap();
        assert!(a.is_member(&Nat::from(24u32)));
        assert!(!a.is_member(&Nat::from(12u32)));
        assert!(!a.is_member(&Nat::from(9u32)));
        assert!(!a.is_member(&Nat::zero()));
    }

    #[test]
    fn non_members_have_no_index() {
        assert_eq!(
            HelpSet::evens().index_of(&Nat::from(3u32)),
            Err(CodingError::NotAMember(Nat::from(3u32)))
        );
    }
}
