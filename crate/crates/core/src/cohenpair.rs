//! Coding a binary target into a pair of binary strings, each of which
//! meets its own roster of dense sets.
//!
//! Both strings grow in lockstep. At each stage the first string is extended
//! into a dense set; wherever that extension put a `1`, the second string
//! consumes the next target bit. The second string is then extended into its
//! own dense set while the first is padded with `0`s, and finally a marker
//! position (`1` in the first string, the next target bit in the second) is
//! appended. So every `1` of the first string marks a coded bit of the second
//! and decoding is a positional read.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::report::{Check, VerificationReport};
use crate::EventuallyPeriodicSeq;

/// A finite 0/1 string. Renders as its digits, or `-` when empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryString(Vec<bool>);

impl BinaryString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, b: bool) {
        self.0.push(b);
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn prefix(&self, len: usize) -> BinaryString {
        BinaryString(self.0[..len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &BinaryString) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl From<Vec<bool>> for BinaryString {
    fn from(bits: Vec<bool>) -> Self {
        BinaryString(bits)
    }
}

impl From<&[u8]> for BinaryString {
    fn from(bits: &[u8]) -> Self {
        BinaryString(bits.iter().map(|&b| b != 0).collect())
    }
}

impl<const N: usize> From<[u8; N]> for BinaryString {
    fn from(bits: [u8; N]) -> Self {
        BinaryString::from(&bits[..])
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a bit string: {0:?}")]
pub struct ParseBitsError(pub String);

impl FromStr for BinaryString {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "-" {
            return Ok(BinaryString::new());
        }
        if s.is_empty() {
            return Err(ParseBitsError(s.into()));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ParseBitsError(s.into())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BinaryString)
    }
}

/// A dense set of binary strings.
pub trait CohenDense: Send + Sync {
    /// Some `p′ ⊒ p` in the set.
    fn extend(&self, p: &BinaryString) -> BinaryString;

    fn member(&self, p: &BinaryString) -> bool;

    /// Whether some prefix of `c` of length at least `from` is a member.
    fn met_by(&self, c: &BinaryString, from: usize) -> bool {
        (from..=c.len()).any(|n| self.member(&c.prefix(n)))
    }
}

/// Built-in dense sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CohenSpec {
    /// Strings containing `w` as a contiguous substring.
    Contains(BinaryString),
    /// Strings of length at least `n`.
    MinLen(usize),
    /// Strings ending in `w`. Dense but not open.
    EndsWith(BinaryString),
}

/// Length of the longest suffix of `p` that is a proper prefix of `w`.
fn overlap(p: &[bool], w: &[bool]) -> usize {
    (0..w.len().min(p.len() + 1))
        .rev()
        .find(|&k| p.ends_with(&w[..k]))
        .unwrap_or(0)
}

impl CohenDense for CohenSpec {
    fn extend(&self, p: &BinaryString) -> BinaryString {
        if self.member(p) {
            return p.clone();
        }
        let mut out = p.clone();
        match self {
            CohenSpec::Contains(w) | CohenSpec::EndsWith(w) => {
                let k = overlap(p.bits(), w.bits());
                out.0.extend_from_slice(&w.bits()[k..]);
            }
            CohenSpec::MinLen(n) => out.0.resize(*n, false),
        }
        out
    }

    fn member(&self, p: &BinaryString) -> bool {
        match self {
            CohenSpec::Contains(w) => w.is_empty() || p.0.windows(w.len()).any(|s| s == w.bits()),
            CohenSpec::MinLen(n) => p.len() >= *n,
            CohenSpec::EndsWith(w) => p.0.ends_with(w.bits()),
        }
    }
}

impl fmt::Display for CohenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohenSpec::Contains(w) => write!(f, "contains({w})"),
            CohenSpec::MinLen(n) => write!(f, "min_len({n})"),
            CohenSpec::EndsWith(w) => write!(f, "ends_with({w})"),
        }
    }
}

pub type CohenRoster = Vec<Box<dyn CohenDense>>;

/// Boxes a list of built-in specs.
pub fn cohen_roster(specs: &[CohenSpec]) -> CohenRoster {
    specs
        .iter()
        .map(|s| Box::new(s.clone()) as Box<dyn CohenDense>)
        .collect()
}

/// Snapshot of both strings at the end of a stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub p: BinaryString,
    pub q: BinaryString,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairTranscript {
    pub stages: Vec<Stage>,
    pub c1: BinaryString,
    pub c2: BinaryString,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error("stage {stage}: roster {roster} set {index} returned a non-extension or a non-member")]
    Contract { stage: usize, roster: u8, index: usize },
    #[error("target value {value} at position {position} is not a bit")]
    NonBinaryTarget { position: u64, value: u64 },
}

/// Runs `stages` stages of the pair construction.
pub fn build_pair(
    roster1: &[Box<dyn CohenDense>],
    roster2: &[Box<dyn CohenDense>],
    x: &EventuallyPeriodicSeq,
    stages: usize,
) -> Result<PairTranscript, PairError> {
    let mut p = BinaryString::new();
    let mut q = BinaryString::new();
    let mut j = 0u64;
    let mut next_bit = || -> Result<bool, PairError> {
        let value = x.at(j);
        if value > 1 {
            return Err(PairError::NonBinaryTarget { position: j, value });
        }
        j += 1;
        Ok(value == 1)
    };
    let mut snapshots = Vec::with_capacity(stages);
    for stage in 0..stages {
        if !roster1.is_empty() {
            let index = stage % roster1.len();
            let d = &roster1[index];
            let grown = d.extend(&p);
            if !p.is_prefix_of(&grown) || !d.member(&grown) {
                return Err(PairError::Contract {
                    stage,
                    roster: 1,
                    index,
                });
            }
            for m in p.len()..grown.len() {
                let coded = if grown.0[m] { next_bit()? } else { false };
                q.push(coded);
            }
            p = grown;
        }
        if !roster2.is_empty() {
            let index = stage % roster2.len();
            let d = &roster2[index];
            let grown = d.extend(&q);
            if !q.is_prefix_of(&grown) || !d.member(&grown) {
                return Err(PairError::Contract {
                    stage,
                    roster: 2,
                    index,
                });
            }
            p.0.resize(grown.len(), false);
            q = grown;
        }
        p.push(true);
        q.push(next_bit()?);
        snapshots.push(Stage {
            p: p.clone(),
            q: q.clone(),
        });
    }
    Ok(PairTranscript {
        stages: snapshots,
        c1: p,
        c2: q,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodePairError {
    #[error("first string has {found} ones, {wanted} needed")]
    TooFewOnes { wanted: usize, found: usize },
    #[error("one at position {position} lies beyond the second string (length {len})")]
    OutOfRange { position: usize, len: usize },
}

/// The bits of the second string at the first `count` ones of the first.
pub fn decode_pair(c1: &BinaryString, c2: &BinaryString, count: usize) -> Result<Vec<u8>, DecodePairError> {
    let positions: Vec<usize> = c1
        .bits()
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(m, _)| m)
        .take(count)
        .collect();
    if positions.len() < count {
        return Err(DecodePairError::TooFewOnes {
            wanted: count,
            found: positions.len(),
        });
    }
    positions
        .into_iter()
        .map(|m| {
            c2.get(m).map(u8::from).ok_or(DecodePairError::OutOfRange {
                position: m,
                len: c2.len(),
            })
        })
        .collect()
}

/// Checks a pair transcript against its rosters and target.
pub fn verify_pair(
    roster1: &[Box<dyn CohenDense>],
    roster2: &[Box<dyn CohenDense>],
    x: &EventuallyPeriodicSeq,
    t: &PairTranscript,
) -> VerificationReport {
    let mut r = VerificationReport::new();
    let mut met1 = alloc::vec![false; roster1.len()];
    let mut met2 = alloc::vec![false; roster2.len()];
    let empty = Stage {
        p: BinaryString::new(),
        q: BinaryString::new(),
    };
    let mut prev = &empty;
    for (i, s) in t.stages.iter().enumerate() {
        let locus = || format!("stage {i}");
        let shape = s.p.len() == s.q.len()
            && s.p.len() > prev.p.len()
            && prev.p.is_prefix_of(&s.p)
            && prev.q.is_prefix_of(&s.q);
        r.expect(Check::Format, shape, || {
            (
                locus(),
                "snapshots are not equal-length extensions of the previous stage".into(),
            )
        });
        for (roster, met, now, before) in [(roster1, &mut met1, &s.p, &prev.p), (roster2, &mut met2, &s.q, &prev.q)] {
            if roster.is_empty() {
                continue;
            }
            let k = i % roster.len();
            let ok = roster[k].met_by(now, before.len().min(now.len()));
            met[k] |= ok;
            r.expect(Check::Membership, ok, || {
                (locus(), format!("roster set {k} is not met by this stage"))
            });
        }
        prev = s;
    }
    r.expect(Check::Footer, t.c1 == prev.p && t.c2 == prev.q, || {
        ("footer".into(), "final strings differ from the last snapshot".into())
    });

    // Every one of c1 marks the next target bit in c2.
    let mut j = 0u64;
    for (m, &b) in t.c1.bits().iter().enumerate() {
        if !b {
            continue;
        }
        let want = x.at(j);
        let got = t.c2.get(m).map(u64::from);
        r.expect(Check::Invariant, got == Some(want), || {
            (
                format!("position {m}"),
                format!("coded bit {j} should be {want}, found {got:?}"),
            )
        });
        j += 1;
    }

    let ones = t.c1.ones();
    r.expect(Check::Decode, ones >= t.stages.len(), || {
        (
            "footer".into(),
            format!("{ones} coded bits for {} stages", t.stages.len()),
        )
    });
    match decode_pair(&t.c1, &t.c2, ones) {
        Ok(bits) => {
            let want: Vec<u8> = x.take(ones).into_iter().map(|v| v as u8).collect();
            let ok = x.take(ones).iter().all(|&v| v <= 1) && bits == want;
            r.expect(Check::Decode, ok, || {
                ("footer".into(), "decoded bits differ from the target".into())
            })
        }
        Err(e) => r.expect(Check::Decode, false, || ("footer".into(), format!("{e}"))),
    };

    for (name, met) in [("roster1", &met1), ("roster2", &met2)] {
        for (k, &ok) in met.iter().enumerate().take(t.stages.len()) {
            r.expect(Check::Coverage, ok, || (format!("{name} set {k}"), "never met".into()));
        }
    }
    r
}
