//! The interleaved construction: meet a dense set without touching `A`,
//! then write one value of the target into the stem, and repeat.
//!
//! A run is recorded as a [`RunTranscript`] holding every intermediate
//! condition in full, so [`verify_transcript`] can re-check it without
//! re-running the builder.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::coding::{decode, eta, HelpSet, Membership, NoHelp};
use crate::conditions::{Bounded, Extends, ExtendsA, HechlerCondition};
use crate::densesets::{code_step, extend_in_a, DenseSet, SearchError};
use crate::report::{Check, VerificationReport};
use crate::{EventuallyPeriodicSeq, Nat};

/// Depth and width of the fallback refutation search used when the exact
/// inclusion test cannot decide.
pub const CHAIN_PROBE_DEPTH: usize = 6;
pub const CHAIN_PROBE_WIDTH: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// The condition after meeting roster set `roster_index`.
    Meet {
        roster_index: usize,
        condition: HechlerCondition,
    },
    /// The condition after coding target value `code_index` by the new
    /// stem entry `z`.
    Code {
        code_index: u64,
        z: Nat,
        condition: HechlerCondition,
    },
}

impl Step {
    pub fn condition(&self) -> &HechlerCondition {
        match self {
            Step::Meet { condition, .. } | Step::Code { condition, .. } => condition,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunTranscript {
    pub steps: Vec<Step>,
    /// The stem of the last condition: the computed prefix of `g`.
    pub g_prefix: Vec<Nat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {source}")]
pub struct BuildError {
    pub step: usize,
    #[source]
    pub source: SearchError,
}

fn at_step(step: usize) -> impl FnOnce(SearchError) -> BuildError {
    move |source| BuildError { step, source }
}

/// Runs `steps` rounds of meet-then-code from the full tree, cycling
/// through `roster`. An empty roster leaves only the coding steps.
pub fn build_coded_generic(
    roster: &[DenseSet],
    help: &HelpSet,
    x: &EventuallyPeriodicSeq,
    steps: usize,
    fuel: u64,
) -> Result<RunTranscript, BuildError> {
    let mut t = HechlerCondition::full();
    let mut out = Vec::with_capacity(2 * steps);
    for i in 0..steps {
        if !roster.is_empty() {
            let roster_index = i % roster.len();
            t = extend_in_a(&t, &roster[roster_index], help, fuel).map_err(at_step(i))?;
            out.push(Step::Meet {
                roster_index,
                condition: t.clone(),
            });
        }
        let code_index = i as u64;
        t = code_step(&t, help, x.at(code_index), fuel).map_err(at_step(i))?;
        let z = t.stem().last().expect("coding adds a stem entry").clone();
        out.push(Step::Code {
            code_index,
            z,
            condition: t.clone(),
        });
    }
    Ok(RunTranscript {
        g_prefix: t.stem().entries().to_vec(),
        steps: out,
    })
}

/// Meets `steps` roster sets in turn with no coding and no help set.
pub fn build_plain_generic(roster: &[DenseSet], steps: usize, fuel: u64) -> Result<RunTranscript, BuildError> {
    let mut t = HechlerCondition::full();
    let mut out = Vec::with_capacity(steps);
    if !roster.is_empty() {
        for i in 0..steps {
            let roster_index = i % roster.len();
            t = extend_in_a(&t, &roster[roster_index], &NoHelp, fuel).map_err(at_step(i))?;
            out.push(Step::Meet {
                roster_index,
                condition: t.clone(),
            });
        }
    }
    Ok(RunTranscript {
        g_prefix: t.stem().entries().to_vec(),
        steps: out,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("footer {footer:?} disagrees with the final stem {stem:?}")]
pub struct MalformedTranscript {
    pub footer: Vec<Nat>,
    pub stem: Vec<Nat>,
}

/// The prefix of `g` carried by a transcript: its final stem.
pub fn extract_g(t: &RunTranscript) -> Result<Vec<Nat>, MalformedTranscript> {
    let stem = t
        .steps
        .last()
        .map(|s| s.condition().stem().entries().to_vec())
        .unwrap_or_default();
    if stem != t.g_prefix {
        return Err(MalformedTranscript {
            footer: t.g_prefix.clone(),
            stem,
        });
    }
    Ok(stem)
}

/// Checks a coded transcript against its inputs.
pub fn verify_transcript(
    roster: &[DenseSet],
    help: &HelpSet,
    x: &EventuallyPeriodicSeq,
    t: &RunTranscript,
) -> VerificationReport {
    verify(roster, Some((help, x)), t)
}

/// Checks a plain transcript (no help set, no coding steps).
pub fn verify_plain_transcript(roster: &[DenseSet], t: &RunTranscript) -> VerificationReport {
    verify(roster, None, t)
}

fn locus(i: usize) -> String {
    format!("step {i}")
}

fn verify(
    roster: &[DenseSet],
    coding: Option<(&HelpSet, &EventuallyPeriodicSeq)>,
    t: &RunTranscript,
) -> VerificationReport {
    let mut r = VerificationReport::new();
    let help: &dyn Membership = match coding {
        Some((help, _)) => help,
        None => &NoHelp,
    };
    check_schedule(&mut r, roster.len(), coding.is_some(), &t.steps);

    let mut met = alloc::vec![false; roster.len()];
    let mut meets_seen = 0usize;
    let mut codes_seen = 0u64;
    let full = HechlerCondition::full();
    let mut prev = &full;
    for (i, step) in t.steps.iter().enumerate() {
        let cur = step.condition();
        check_chain(&mut r, i, cur, prev);
        match step {
            Step::Meet { roster_index, .. } => {
                meets_seen += 1;
                if let Some(d) = roster.get(*roster_index) {
                    let verdict = d.member(cur);
                    let yes = verdict.is_yes();
                    met[*roster_index] |= yes;
                    r.expect(Check::Membership, yes, || {
                        (locus(i), format!("not shown in roster set {roster_index}: {verdict:?}"))
                    });
                }
                let avoid = cur.extends_avoiding(prev, help);
                r.expect(Check::Avoidance, avoid == ExtendsA::Yes, || {
                    (locus(i), format!("meet is not an A-avoiding extension: {avoid:?}"))
                });
            }
            Step::Code { code_index, z, .. } => {
                codes_seen += 1;
                let Some((a, x)) = coding else {
                    r.fail(Check::Coding, locus(i), "coding step in a plain transcript");
                    continue;
                };
                let one_more = prev.stem().child(z.clone()) == *cur.stem();
                r.expect(Check::Coding, one_more, || {
                    (
                        locus(i),
                        format!("stem {} is not the previous stem plus {z}", cur.stem()),
                    )
                });
                let labelled = eta(a, z).ok();
                let want = x.at(*code_index);
                r.expect(Check::Coding, labelled == Some(want), || match labelled {
                    Some(m) => (locus(i), format!("{z} codes {m}, target value is {want}")),
                    None => (locus(i), format!("{z} is not a member of the help set")),
                });
            }
        }
        prev = cur;
    }

    let last_stem = prev.stem().entries();
    r.expect(Check::Footer, t.g_prefix == last_stem, || {
        ("footer".into(), "g prefix differs from the final stem".into())
    });

    if let Some((a, x)) = coding {
        let want = x.take(codes_seen as usize);
        match decode(a, &t.g_prefix) {
            Ok(got) => r.expect(Check::Decode, got.starts_with(&want), || {
                ("footer".into(), format!("decoded {got:?}, expected prefix {want:?}"))
            }),
            Err(e) => r.expect(Check::Decode, false, || ("footer".into(), format!("{e}"))),
        };
    }

    for (k, &ok) in met.iter().enumerate().take(meets_seen) {
        r.expect(Check::Coverage, ok, || {
            (format!("roster {k}"), "never met by a recorded condition".into())
        });
    }
    r
}

fn check_schedule(r: &mut VerificationReport, roster_len: usize, coded: bool, steps: &[Step]) {
    let mut expected = Vec::new();
    let rounds = if coded {
        steps.iter().filter(|s| matches!(s, Step::Code { .. })).count()
    } else {
        steps.len()
    };
    for i in 0..rounds {
        if roster_len > 0 {
            expected.push((true, i % roster_len));
        }
        if coded {
            expected.push((false, i));
        }
    }
    let actual: Vec<(bool, usize)> = steps
        .iter()
        .map(|s| match s {
            Step::Meet { roster_index, .. } => (true, *roster_index),
            Step::Code { code_index, .. } => (false, *code_index as usize),
        })
        .collect();
    let bad = actual.iter().zip(&expected).position(|(a, e)| a != e);
    r.expect(Check::Schedule, bad.is_none() && actual.len() == expected.len(), || {
        let at = bad.unwrap_or(actual.len().min(expected.len()));
        (locus(at), "steps do not follow the meet/code schedule".into())
    });
}

fn check_chain(r: &mut VerificationReport, i: usize, cur: &HechlerCondition, prev: &HechlerCondition) {
    let ok = match cur.extends(prev) {
        Extends::Yes => Ok(()),
        Extends::No(w) => Err(format!("{w} lies outside the previous condition")),
        Extends::Unknown => match cur.extends_bounded(prev, CHAIN_PROBE_DEPTH, CHAIN_PROBE_WIDTH) {
            Bounded::ConsistentUpTo => Ok(()),
            Bounded::No(w) => Err(format!("{w} lies outside the previous condition")),
        },
    };
    match ok {
        Ok(()) => r.pass(Check::Chain),
        Err(detail) => r.fail(Check::Chain, locus(i), detail),
    }
}
