//! Outcome of an independent transcript check.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The kinds of check a verifier runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Header,
    Roster,
    Format,
    Schedule,
    Chain,
    Membership,
    Avoidance,
    Coding,
    Invariant,
    Footer,
    Decode,
    Coverage,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Header => "header",
            Check::Roster => "roster",
            Check::Format => "format",
            Check::Schedule => "schedule",
            Check::Chain => "chain",
            Check::Membership => "membership",
            Check::Avoidance => "avoidance",
            Check::Coding => "coding",
            Check::Invariant => "invariant",
            Check::Footer => "footer",
            Check::Decode => "decode",
            Check::Coverage => "coverage",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: Check,
    /// Where the failure sits, e.g. `step 3`.
    pub locus: String,
    pub detail: String,
}

/// Per-check tallies plus every failure with its locus.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    tallies: BTreeMap<Check, usize>,
    failures: Vec<Finding>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, check: Check) {
        *self.tallies.entry(check).or_default() += 1;
    }

    pub fn fail(&mut self, check: Check, locus: impl Into<String>, detail: impl Into<String>) {
        *self.tallies.entry(check).or_default() += 1;
        self.failures.push(Finding {
            check,
            locus: locus.into(),
            detail: detail.into(),
        });
    }

    /// Records a pass when `ok`, otherwise a failure built lazily.
    pub fn expect(&mut self, check: Check, ok: bool, failure: impl FnOnce() -> (String, String)) -> bool {
        if ok {
            self.pass(check);
        } else {
            let (locus, detail) = failure();
            self.fail(check, locus, detail);
        }
        ok
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for (check, n) in other.tallies {
            *self.tallies.entry(check).or_default() += n;
        }
        self.failures.extend(other.failures);
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[Finding] {
        &self.failures
    }

    pub fn failed(&self, check: Check) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    /// Number of times `check` was evaluated.
    pub fn count(&self, check: Check) -> usize {
        self.tallies.get(&check).copied().unwrap_or(0)
    }
}

/// One `PASS`/`FAIL` line per check kind, failures indented below.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&check, &n) in &self.tallies {
            let bad: Vec<&Finding> = self.failures.iter().filter(|x| x.check == check).collect();
            if bad.is_empty() {
                writeln!(f, "PASS {check} ({n})")?;
            } else {
                writeln!(f, "FAIL {check} ({} of {n})", bad.len())?;
                for x in bad {
                    writeln!(f, "  {}: {}", x.locus, x.detail)?;
                }
            }
        }
        Ok(())
    }
}
