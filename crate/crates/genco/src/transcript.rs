//! Line-oriented transcript files.
//!
//! A Hechler run:
//!
//! ```text
//! ROSTER <sha256 hex of the canonical roster>
//! HELP <canonical help json | null>
//! TARGET <canonical target json | null>
//! STEPS <n>
//! MEET <i> <condition>
//! CODE <j> <z> <condition>
//! G [a,b,c]
//! ```
//!
//! A Cohen pair run has `ROSTER`, `TARGET`, `STAGES <n>`, then one
//! `STAGE <i> P <bits> Q <bits>` line per stage and the footers `C1 <bits>`
//! and `C2 <bits>`. Every line ends in `\n`; nothing else is allowed.

use std::fmt::Write as _;

use genco_core::cohenpair::{BinaryString, PairTranscript, Stage};
use genco_core::conditions::parse_node;
use genco_core::generic::{RunTranscript, Step};
use genco_core::{HechlerCondition, Nat, Node};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn bad<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunHeader {
    pub roster: String,
    /// `None` for plain runs.
    pub help: Option<String>,
    pub target: Option<String>,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairHeader {
    pub roster: String,
    pub target: String,
    pub stages: u64,
}

fn nat_list(xs: &[Nat]) -> String {
    let body: Vec<String> = xs.iter().map(Nat::to_string).collect();
    format!("[{}]", body.join(","))
}

pub fn write_run(h: &RunHeader, t: &RunTranscript) -> String {
    let mut out = String::new();
    let null = "null".to_string();
    writeln!(out, "ROSTER {}", h.roster).unwrap();
    writeln!(out, "HELP {}", h.help.as_ref().unwrap_or(&null)).unwrap();
    writeln!(out, "TARGET {}", h.target.as_ref().unwrap_or(&null)).unwrap();
    writeln!(out, "STEPS {}", h.steps).unwrap();
    for s in &t.steps {
        match s {
            Step::Meet {
                roster_index,
                condition,
            } => writeln!(out, "MEET {roster_index} {condition}").unwrap(),
            Step::Code {
                code_index,
                z,
                condition,
            } => writeln!(out, "CODE {code_index} {z} {condition}").unwrap(),
        }
    }
    writeln!(out, "G {}", nat_list(&t.g_prefix)).unwrap();
    out
}

pub fn write_pair(h: &PairHeader, t: &PairTranscript) -> String {
    let mut out = String::new();
    writeln!(out, "ROSTER {}", h.roster).unwrap();
    writeln!(out, "TARGET {}", h.target).unwrap();
    writeln!(out, "STAGES {}", h.stages).unwrap();
    for (i, s) in t.stages.iter().enumerate() {
        writeln!(out, "STAGE {i} P {} Q {}", s.p, s.q).unwrap();
    }
    writeln!(out, "C1 {}", t.c1).unwrap();
    writeln!(out, "C2 {}", t.c2).unwrap();
    out
}

/// Splits into lines, insisting on a final newline and no carriage returns.
fn lines(text: &str) -> Result<Vec<&str>, FormatError> {
    let Some(body) = text.strip_suffix('\n') else {
        return bad(text.lines().count().max(1), "missing final newline");
    };
    let out: Vec<&str> = body.split('\n').collect();
    if let Some(i) = out.iter().position(|l| l.contains('\r')) {
        return bad(i + 1, "carriage return");
    }
    Ok(out)
}

fn field<'a>(lines: &[&'a str], i: usize, tag: &str) -> Result<&'a str, FormatError> {
    let line = lines.get(i).copied().unwrap_or("");
    match line.strip_prefix(tag).and_then(|r| r.strip_prefix(' ')) {
        Some(rest) if !rest.is_empty() => Ok(rest),
        _ => bad(i + 1, format!("expected {tag} line")),
    }
}

fn number<T: std::str::FromStr>(s: &str, line: usize) -> Result<T, FormatError> {
    let canonical = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    match s.parse() {
        Ok(v) if canonical => Ok(v),
        _ => bad(line, format!("bad number {s:?}")),
    }
}

fn hex_hash(s: &str, line: usize) -> Result<String, FormatError> {
    if s.len() == 64 && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
        Ok(s.to_string())
    } else {
        bad(line, "roster hash must be 64 lowercase hex digits")
    }
}

fn condition(s: &str, line: usize) -> Result<HechlerCondition, FormatError> {
    s.parse().or_else(|e| bad(line, format!("bad condition: {e}")))
}

pub fn parse_run(text: &str) -> Result<(RunHeader, RunTranscript), FormatError> {
    let ls = lines(text)?;
    let roster = hex_hash(field(&ls, 0, "ROSTER")?, 1)?;
    let optional = |s: &str| (s != "null").then(|| s.to_string());
    let help = optional(field(&ls, 1, "HELP")?);
    let target = optional(field(&ls, 2, "TARGET")?);
    let steps = number(field(&ls, 3, "STEPS")?, 4)?;
    let mut out = Vec::new();
    let last = ls.len() - 1;
    for (i, line) in ls.iter().enumerate().take(last).skip(4) {
        let n = i + 1;
        let mut parts = line.splitn(3, ' ');
        match (parts.next(), parts.next(), parts.next()) {
            (Some("MEET"), Some(idx), Some(cond)) => out.push(Step::Meet {
                roster_index: number(idx, n)?,
                condition: condition(cond, n)?,
            }),
            (Some("CODE"), Some(idx), Some(rest)) => {
                let (z, cond) = rest
                    .split_once(' ')
                    .map_or_else(|| bad(n, "CODE needs z and a condition"), Ok)?;
                out.push(Step::Code {
                    code_index: number(idx, n)?,
                    z: number(z, n)?,
                    condition: condition(cond, n)?,
                });
            }
            _ => return bad(n, "expected MEET or CODE"),
        }
    }
    if last < 4 {
        return bad(ls.len() + 1, "expected G line");
    }
    let g = field(&ls, last, "G")?;
    let g: Node = parse_node(g).or_else(|e| bad(last + 1, format!("bad g prefix: {e}")))?;
    Ok((
        RunHeader {
            roster,
            help,
            target,
            steps,
        },
        RunTranscript {
            steps: out,
            g_prefix: g.into_entries(),
        },
    ))
}

fn bit_string(s: &str, line: usize) -> Result<BinaryString, FormatError> {
    s.parse().or_else(|_| bad(line, format!("bad bit string {s:?}")))
}

pub fn parse_pair(text: &str) -> Result<(PairHeader, PairTranscript), FormatError> {
    let ls = lines(text)?;
    if ls.len() < 5 {
        return bad(ls.len() + 1, "transcript too short");
    }
    let roster = hex_hash(field(&ls, 0, "ROSTER")?, 1)?;
    let target = field(&ls, 1, "TARGET")?.to_string();
    let stages = number(field(&ls, 2, "STAGES")?, 3)?;
    let mut out = Vec::new();
    for (k, line) in ls[3..ls.len() - 2].iter().enumerate() {
        let n = k + 4;
        let parts: Vec<&str> = line.split(' ').collect();
        match parts.as_slice() {
            ["STAGE", i, "P", p, "Q", q] => {
                if number::<usize>(i, n)? != k {
                    return bad(n, "stages out of order");
                }
                out.push(Stage {
                    p: bit_string(p, n)?,
                    q: bit_string(q, n)?,
                });
            }
            _ => return bad(n, "expected STAGE line"),
        }
    }
    let c1 = bit_string(field(&ls, ls.len() - 2, "C1")?, ls.len() - 1)?;
    let c2 = bit_string(field(&ls, ls.len() - 1, "C2")?, ls.len())?;
    Ok((
        PairHeader { roster, target, stages },
        PairTranscript { stages: out, c1, c2 },
    ))
}
