//! Building and verifying transcript files from run configs.

use genco_core::cohenpair::{build_pair, cohen_roster, verify_pair, PairError};
use genco_core::densesets::{roster, DenseError, SearchError};
use genco_core::generic::{
    build_coded_generic, build_plain_generic, verify_plain_transcript, verify_transcript, BuildError, Step,
};
use genco_core::report::Check;
use genco_core::VerificationReport;

use crate::config::{canonical, help_value, seq_value, CohenConfig, HechlerConfig, RunConfig};
use crate::transcript::{parse_pair, parse_run, write_pair, write_run, PairHeader, RunHeader};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Dense(#[from] DenseError),
    #[error("{0}")]
    Build(#[from] BuildError),
    #[error("{0}")]
    Pair(#[from] PairError),
    #[error("step count {0} is too large")]
    TooManySteps(u64),
    #[error("{0}")]
    WrongPoset(&'static str),
}

impl RunError {
    pub fn is_fuel(&self) -> bool {
        matches!(
            self,
            RunError::Build(BuildError {
                source: SearchError::FuelExhausted { .. },
                ..
            })
        )
    }
}

fn count(n: u64) -> Result<usize, RunError> {
    usize::try_from(n).map_err(|_| RunError::TooManySteps(n))
}

fn hechler(config: &RunConfig) -> Result<&HechlerConfig, RunError> {
    match config {
        RunConfig::Hechler(c) => Ok(c),
        RunConfig::Cohen(_) => Err(RunError::WrongPoset("expected a hechler config")),
    }
}

fn cohen(config: &RunConfig) -> Result<&CohenConfig, RunError> {
    match config {
        RunConfig::Cohen(c) => Ok(c),
        RunConfig::Hechler(_) => Err(RunError::WrongPoset("expected a cohen config")),
    }
}

/// The coded construction, rendered as a transcript file.
pub fn build(config: &RunConfig, fuel: u64) -> Result<String, RunError> {
    let c = hechler(config)?;
    let d = roster(&c.dense)?;
    let t = build_coded_generic(&d, &c.help, &c.target, count(c.steps)?, fuel)?;
    let header = RunHeader {
        roster: config.roster_hash(),
        help: Some(canonical(&help_value(&c.help))),
        target: Some(canonical(&seq_value(&c.target))),
        steps: c.steps,
    };
    Ok(write_run(&header, &t))
}

/// The uncoded construction: same roster and step count, no help set.
pub fn build_plain(config: &RunConfig, fuel: u64) -> Result<String, RunError> {
    let c = hechler(config)?;
    let d = roster(&c.dense)?;
    let t = build_plain_generic(&d, count(c.steps)?, fuel)?;
    let header = RunHeader {
        roster: config.roster_hash(),
        help: None,
        target: None,
        steps: c.steps,
    };
    Ok(write_run(&header, &t))
}

pub fn build_cohen(config: &RunConfig) -> Result<String, RunError> {
    let c = cohen(config)?;
    let t = build_pair(
        &cohen_roster(&c.dense),
        &cohen_roster(&c.dense2),
        &c.target,
        count(c.stages)?,
    )?;
    let header = PairHeader {
        roster: config.roster_hash(),
        target: canonical(&seq_value(&c.target)),
        stages: c.stages,
    };
    Ok(write_pair(&header, &t))
}

fn header_field(r: &mut VerificationReport, field: &str, found: &str, wanted: &str) {
    r.expect(Check::Header, found == wanted, || {
        (field.to_string(), format!("expected {wanted}, found {found}"))
    });
}

/// Checks a transcript file of either kind against its config. Plain and
/// coded Hechler runs are told apart by the `HELP` line.
pub fn verify(config: &RunConfig, text: &str) -> Result<VerificationReport, RunError> {
    let mut r = VerificationReport::new();
    let hash = config.roster_hash();
    match config {
        RunConfig::Hechler(c) => {
            let (h, t) = match parse_run(text) {
                Ok(parsed) => parsed,
                Err(e) => {
                    r.fail(Check::Format, format!("line {}", e.line), e.message);
                    return Ok(r);
                }
            };
            r.expect(Check::Roster, h.roster == hash, || {
                ("ROSTER".into(), format!("expected {hash}, found {}", h.roster))
            });
            header_field(&mut r, "STEPS", &h.steps.to_string(), &c.steps.to_string());
            let d = roster(&c.dense)?;
            let meets = t.steps.iter().filter(|s| matches!(s, Step::Meet { .. })).count() as u64;
            let codes = t.steps.len() as u64 - meets;
            match &h.help {
                Some(help) => {
                    header_field(&mut r, "HELP", help, &canonical(&help_value(&c.help)));
                    let target = h.target.as_deref().unwrap_or("null");
                    header_field(&mut r, "TARGET", target, &canonical(&seq_value(&c.target)));
                    header_field(&mut r, "CODE count", &codes.to_string(), &c.steps.to_string());
                    r.merge(verify_transcript(&d, &c.help, &c.target, &t));
                }
                None => {
                    header_field(&mut r, "TARGET", h.target.as_deref().unwrap_or("null"), "null");
                    let wanted = if d.is_empty() { 0 } else { c.steps };
                    header_field(&mut r, "MEET count", &meets.to_string(), &wanted.to_string());
                    r.merge(verify_plain_transcript(&d, &t));
                }
            }
        }
        RunConfig::Cohen(c) => {
            let (h, t) = match parse_pair(text) {
                Ok(parsed) => parsed,
                Err(e) => {
                    r.fail(Check::Format, format!("line {}", e.line), e.message);
                    return Ok(r);
                }
            };
            r.expect(Check::Roster, h.roster == hash, || {
                ("ROSTER".into(), format!("expected {hash}, found {}", h.roster))
            });
            header_field(&mut r, "TARGET", &h.target, &canonical(&seq_value(&c.target)));
            header_field(&mut r, "STAGES", &h.stages.to_string(), &c.stages.to_string());
            header_field(
                &mut r,
                "STAGE count",
                &t.stages.len().to_string(),
                &c.stages.to_string(),
            );
            r.merge(verify_pair(
                &cohen_roster(&c.dense),
                &cohen_roster(&c.dense2),
                &c.target,
                &t,
            ));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use genco_core::DEFAULT_FUEL;

    const CODED: &str = r#"{"poset":"hechler","help":{"kind":"evens"},
        "dense":[{"type":"stem_length","n":1}],
        "target":{"prefix":[],"cycle":[1]},"steps":2}"#;

    const PAIR: &str = r#"{"poset":"cohen","target":{"prefix":[1,0,1],"cycle":[0]},
        "dense":[],"dense2":[],"stages":3}"#;

    #[test]
    fn coded_build_verifies() {
        let c = RunConfig::parse(CODED).unwrap();
        let text = build(&c, DEFAULT_FUEL).unwrap();
        assert!(text.contains("\nHELP {\"kind\":\"evens\"}\nTARGET {\"cycle\":[1],\"prefix\":[]}\nSTEPS 2\n"));
        assert!(text.ends_with("G [1,2,2]\n"), "{text}");
        let r = verify(&c, &text).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn plain_build_verifies() {
        let c = RunConfig::parse(CODED).unwrap();
        let text = build_plain(&c, DEFAULT_FUEL).unwrap();
        assert!(text.contains("\nHELP null\nTARGET null\n"));
        assert!(verify(&c, &text).unwrap().all_passed());
    }

    #[test]
    fn header_mismatches_are_reported() {
        let c = RunConfig::parse(CODED).unwrap();
        let text = build(&c, DEFAULT_FUEL).unwrap();
        let r = verify(&c, &text.replace("STEPS 2", "STEPS 3")).unwrap();
        assert!(r.failed(Check::Header));
        let r = verify(&c, &text.replace("{\"kind\":\"evens\"}", "{\"kind\":\"primes\"}")).unwrap();
        assert!(r.failed(Check::Header));
        let r = verify(&c, "ROSTER nope\n").unwrap();
        assert!(r.failed(Check::Format));
        assert_eq!(r.failures()[0].locus, "line 1");
    }

    #[test]
    fn cohen_build_verifies() {
        let c = RunConfig::parse(PAIR).unwrap();
        let text = build_cohen(&c).unwrap();
        assert!(
            text.ends_with("STAGE 0 P 1 Q 1\nSTAGE 1 P 11 Q 10\nSTAGE 2 P 111 Q 101\nC1 111\nC2 101\n"),
            "{text}"
        );
        assert!(verify(&c, &text).unwrap().all_passed());
        assert!(matches!(build(&c, DEFAULT_FUEL), Err(RunError::WrongPoset(_))));
    }
}
