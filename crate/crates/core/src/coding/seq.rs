use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("an eventually periodic sequence needs a nonempty cycle")]
pub struct EmptyCycle;

/// A total sequence of naturals given as a finite prefix followed by a
/// repeating cycle. Targets and help reals are presented this way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventuallyPeriodicSeq {
    prefix: Vec<u64>,
    cycle: Vec<u64>,
}

impl EventuallyPeriodicSeq {
    pub fn new(prefix: Vec<u64>, cycle: Vec<u64>) -> Result<Self, EmptyCycle> {
        if cycle.is_empty() {
            return Err(EmptyCycle);
        }
        Ok(EventuallyPeriodicSeq { prefix, cycle })
    }

    /// The constant sequence `v, v, v, ...`.
    pub fn constant(v: u64) -> Self {
        EventuallyPeriodicSeq {
            prefix: Vec::new(),
            cycle: alloc::vec![v],
        }
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u64] {
        &self.cycle
    }

    pub fn at(&self, n: u64) -> u64 {
        match usize::try_from(n).ok().and_then(|i| self.prefix.get(i)) {
            Some(&v) => v,
            None => {
                let off = n - self.prefix.len() as u64;
                self.cycle[(off % self.cycle.len() as u64) as usize]
            }
        }
    }

    /// The first `n` values.
    pub fn take(&self, n: usize) -> Vec<u64> {
        self.iter().take(n).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.prefix.iter().chain(self.cycle.iter().cycle()).copied()
    }
}
