//! Run configurations: strict parsing from JSON and canonical serialization.
//!
//! Every object rejects unknown keys. The canonical form is compact JSON
//! with keys in sorted order and every optional field that has a default
//! written out, so re-serializing a parsed config is byte-stable and roster
//! hashes are reproducible.

use std::collections::BTreeSet;
use std::fmt;

use genco_core::coding::HelpKind;
use genco_core::cohenpair::{BinaryString, CohenSpec};
use genco_core::densesets::{StemPattern, StepConstraint};
use genco_core::{DenseSpec, EventuallyPeriodicSeq, FloorRule, HelpSet, Nat};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// A schema or syntax error, located by a path such as `dense[0].n`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        path: path.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HechlerConfig {
    pub help: HelpSet,
    pub target: EventuallyPeriodicSeq,
    pub dense: Vec<DenseSpec>,
    pub steps: u64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohenConfig {
    pub target: EventuallyPeriodicSeq,
    pub dense: Vec<CohenSpec>,
    pub dense2: Vec<CohenSpec>,
    pub stages: u64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunConfig {
    Hechler(HechlerConfig),
    Cohen(CohenConfig),
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let value: Value = serde_json::from_str(text).or_else(|e| err("", format!("invalid JSON: {e}")))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, ConfigError> {
        let mut o = Obj::new(value, "")?;
        let poset = o.req("poset")?;
        let poset = poset.as_str().map_or_else(|| err("poset", "expected a string"), Ok)?;
        let config = match poset {
            "hechler" => {
                let help = help_set(o.req("help")?, "help")?;
                let target = sequence(o.req("target")?, "target")?;
                let dense = list(o.req("dense")?, "dense", dense_spec)?;
                let steps = natural(o.req("steps")?, "steps")?;
                let seed = o.opt("seed").map(|v| natural(v, "seed")).transpose()?;
                RunConfig::Hechler(HechlerConfig {
                    help,
                    target,
                    dense,
                    steps,
                    seed,
                })
            }
            "cohen" => {
                let target = sequence(o.req("target")?, "target")?;
                for (i, &b) in target.prefix().iter().enumerate() {
                    if b > 1 {
                        return err(&format!("target.prefix[{i}]"), "cohen targets are bits");
                    }
                }
                for (i, &b) in target.cycle().iter().enumerate() {
                    if b > 1 {
                        return err(&format!("target.cycle[{i}]"), "cohen targets are bits");
                    }
                }
                let dense = list(o.req("dense")?, "dense", cohen_spec)?;
                let dense2 = list(o.req("dense2")?, "dense2", cohen_spec)?;
                let stages = natural(o.req("stages")?, "stages")?;
                let seed = o.opt("seed").map(|v| natural(v, "seed")).transpose()?;
                RunConfig::Cohen(CohenConfig {
                    target,
                    dense,
                    dense2,
                    stages,
                    seed,
                })
            }
            other => return err("poset", format!("unknown poset {other:?}")),
        };
        o.finish()?;
        Ok(config)
    }

    pub fn to_value(&self) -> Value {
        match self {
            RunConfig::Hechler(c) => {
                let mut v = json!({
                    "poset": "hechler",
                    "help": help_value(&c.help),
                    "target": seq_value(&c.target),
                    "dense": roster_value(&c.dense),
                    "steps": c.steps,
                });
                if let Some(seed) = c.seed {
                    v["seed"] = json!(seed);
                }
                v
            }
            RunConfig::Cohen(c) => {
                let mut v = json!({
                    "poset": "cohen",
                    "target": seq_value(&c.target),
                    "dense": c.dense.iter().map(cohen_value).collect::<Vec<_>>(),
                    "dense2": c.dense2.iter().map(cohen_value).collect::<Vec<_>>(),
                    "stages": c.stages,
                });
                if let Some(seed) = c.seed {
                    v["seed"] = json!(seed);
                }
                v
            }
        }
    }

    /// Compact JSON, keys sorted.
    pub fn canonical(&self) -> String {
        canonical(&self.to_value())
    }

    /// SHA-256 (hex) of the canonical roster JSON. For Cohen configs the
    /// roster is the pair `[dense, dense2]`.
    pub fn roster_hash(&self) -> String {
        let roster = match self {
            RunConfig::Hechler(c) => roster_value(&c.dense),
            RunConfig::Cohen(c) => json!([
                c.dense.iter().map(cohen_value).collect::<Vec<_>>(),
                c.dense2.iter().map(cohen_value).collect::<Vec<_>>(),
            ]),
        };
        hex::encode(Sha256::digest(canonical(&roster).as_bytes()))
    }
}

/// serde_json keeps object keys in a sorted map, so plain compact output is
/// already canonical.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("values always serialize")
}

/// Parses a help set given either on its own or as the `help` field of a
/// hechler run config.
pub fn parse_help(text: &str) -> Result<HelpSet, ConfigError> {
    let value: Value = serde_json::from_str(text).or_else(|e| err("", format!("invalid JSON: {e}")))?;
    if value.get("poset").is_some() {
        return match RunConfig::from_value(&value)? {
            RunConfig::Hechler(c) => Ok(c.help),
            RunConfig::Cohen(_) => err("poset", "cohen configs carry no help set"),
        };
    }
    help_set(&value, "")
}

/// Parses one dense-set spec.
pub fn parse_dense(text: &str) -> Result<DenseSpec, ConfigError> {
    let value: Value = serde_json::from_str(text).or_else(|e| err("", format!("invalid JSON: {e}")))?;
    dense_spec(&value, "")
}

pub fn help_value(h: &HelpSet) -> Value {
    match h.kind() {
        HelpKind::Evens => json!({"kind": "evens"}),
        HelpKind::Primes => json!({"kind": "primes"}),
        HelpKind::SelfCode(s) => json!({"kind": "selfcode", "abar": seq_value(s)}),
        HelpKind::Explicit(s) => json!({"kind": "explicit", "prefix": s.prefix(), "cycle": s.cycle()}),
    }
}

pub fn seq_value(s: &EventuallyPeriodicSeq) -> Value {
    json!({"prefix": s.prefix(), "cycle": s.cycle()})
}

fn nat_value(n: &Nat) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn floor_fields(f: &FloorRule) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("table".into(), Value::Array(f.table().iter().map(nat_value).collect()));
    m.insert("a".into(), nat_value(f.slope()));
    m.insert("b".into(), nat_value(f.intercept()));
    m
}

pub fn roster_value(specs: &[DenseSpec]) -> Value {
    Value::Array(specs.iter().map(dense_value).collect())
}

pub fn dense_value(d: &DenseSpec) -> Value {
    match d {
        DenseSpec::StemLength(n) => json!({"type": "stem_length", "n": n}),
        DenseSpec::StemHits(k) => json!({"type": "stem_hits", "k": nat_value(k)}),
        DenseSpec::Dominate(f) => {
            let mut m = floor_fields(f);
            m.insert("type".into(), json!("dominate"));
            Value::Object(m)
        }
        DenseSpec::UserStems(patterns) => {
            let patterns: Vec<Value> = patterns
                .iter()
                .map(|p| {
                    let steps: Vec<Value> = p.steps.iter().map(step_value).collect();
                    let mut m = Map::new();
                    m.insert("steps".into(), Value::Array(steps));
                    if let Some(f) = &p.floor {
                        m.insert("floor".into(), Value::Object(floor_fields(f)));
                    }
                    Value::Object(m)
                })
                .collect();
            json!({"type": "user_stems", "patterns": patterns})
        }
    }
}

fn step_value(c: &StepConstraint) -> Value {
    match c {
        StepConstraint::AtLeast(k) => json!({"min": nat_value(k)}),
        StepConstraint::Residue { modulus, residue } => json!({"mod": [nat_value(modulus), nat_value(residue)]}),
        StepConstraint::Exactly(k) => json!({"eq": nat_value(k)}),
        StepConstraint::AtMost(k) => json!({"max": nat_value(k)}),
    }
}

pub fn cohen_value(c: &CohenSpec) -> Value {
    match c {
        CohenSpec::Contains(w) => json!({"type": "contains", "w": w.to_string()}),
        CohenSpec::MinLen(n) => json!({"type": "min_len", "n": n}),
        CohenSpec::EndsWith(w) => json!({"type": "ends_with", "w": w.to_string()}),
    }
}

/// An object being consumed key by key; leftover keys are an error.
struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
    used: BTreeSet<&'static str>,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, path: &str) -> Result<Self, ConfigError> {
        match v {
            Value::Object(map) => Ok(Obj {
                map,
                path: path.to_string(),
                used: BTreeSet::new(),
            }),
            _ => err(path, "expected an object"),
        }
    }

    fn at(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn opt(&mut self, key: &'static str) -> Option<&'a Value> {
        self.used.insert(key);
        self.map.get(key)
    }

    fn req(&mut self, key: &'static str) -> Result<&'a Value, ConfigError> {
        match self.opt(key) {
            Some(v) => Ok(v),
            None => err(&self.path, format!("missing key {key:?}")),
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.map.keys().find(|k| !self.used.contains(k.as_str())) {
            Some(k) => err(&self.at(k), "unknown key"),
            None => Ok(()),
        }
    }
}

fn natural(v: &Value, path: &str) -> Result<u64, ConfigError> {
    match v.as_u64() {
        Some(n) => Ok(n),
        None => err(path, format!("expected a natural number, found {v}")),
    }
}

/// Naturals that may exceed `u64`: a JSON number or a decimal string.
fn big_natural(v: &Value, path: &str) -> Result<Nat, ConfigError> {
    if let Some(n) = v.as_u64() {
        return Ok(Nat::from(n));
    }
    if let Some(s) = v.as_str() {
        let canonical = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
        if canonical {
            if let Ok(n) = s.parse::<Nat>() {
                if n > Nat::from(u64::MAX) {
                    return Ok(n);
                }
            }
        }
    }
    err(path, format!("expected a natural number, found {v}"))
}

fn list<T>(
    v: &Value,
    path: &str,
    item: impl Fn(&Value, &str) -> Result<T, ConfigError>,
) -> Result<Vec<T>, ConfigError> {
    match v {
        Value::Array(xs) => xs
            .iter()
            .enumerate()
            .map(|(i, x)| item(x, &format!("{path}[{i}]")))
            .collect(),
        _ => err(path, "expected an array"),
    }
}

fn sequence(v: &Value, path: &str) -> Result<EventuallyPeriodicSeq, ConfigError> {
    let mut o = Obj::new(v, path)?;
    let prefix = list(o.req("prefix")?, &o.at("prefix"), natural)?;
    let cycle = list(o.req("cycle")?, &o.at("cycle"), natural)?;
    o.finish()?;
    EventuallyPeriodicSeq::new(prefix, cycle).or_else(|_| err(&format!("{path}.cycle"), "cycle must not be empty"))
}

fn help_set(v: &Value, path: &str) -> Result<HelpSet, ConfigError> {
    let mut o = Obj::new(v, path)?;
    let kind = o.req("kind")?;
    let kind = kind
        .as_str()
        .map_or_else(|| err(&o.at("kind"), "expected a string"), Ok)?;
    let help = match kind {
        "evens" => HelpSet::evens(),
        "primes" => HelpSet::primes(),
        "selfcode" => {
            let abar = sequence(o.req("abar")?, &o.at("abar"))?;
            HelpSet::self_code(abar).or_else(|e| err(path, e.to_string()))?
        }
        "explicit" => {
            let prefix = list(o.req("prefix")?, &o.at("prefix"), natural)?;
            let cycle = list(o.req("cycle")?, &o.at("cycle"), natural)?;
            let seq = EventuallyPeriodicSeq::new(prefix, cycle)
                .or_else(|_| err(&o.at("cycle"), "cycle must not be empty"))?;
            HelpSet::explicit(seq).or_else(|e| err(path, e.to_string()))?
        }
        other => return err(&o.at("kind"), format!("unknown help set {other:?}")),
    };
    o.finish()?;
    Ok(help)
}

fn floor_rule(o: &mut Obj<'_>) -> Result<FloorRule, ConfigError> {
    let table = match o.opt("table") {
        Some(t) => list(t, &o.at("table"), big_natural)?,
        None => Vec::new(),
    };
    let a = match o.opt("a") {
        Some(a) => big_natural(a, &o.at("a"))?,
        None => Nat::from(0u32),
    };
    let b = big_natural(o.req("b")?, &o.at("b"))?;
    Ok(FloorRule::new(table, a, b))
}

fn dense_spec(v: &Value, path: &str) -> Result<DenseSpec, ConfigError> {
    let mut o = Obj::new(v, path)?;
    let kind = o.req("type")?;
    let kind = kind
        .as_str()
        .map_or_else(|| err(&o.at("type"), "expected a string"), Ok)?;
    let spec = match kind {
        "stem_length" => {
            let n = natural(o.req("n")?, &o.at("n"))?;
            let n = usize::try_from(n).or_else(|_| err(&o.at("n"), "too large"))?;
            DenseSpec::StemLength(n)
        }
        "stem_hits" => DenseSpec::StemHits(big_natural(o.req("k")?, &o.at("k"))?),
        "dominate" => DenseSpec::Dominate(floor_rule(&mut o)?),
        "user_stems" => {
            let patterns = list(o.req("patterns")?, &o.at("patterns"), stem_pattern)?;
            if patterns.is_empty() {
                return err(&o.at("patterns"), "at least one pattern is required");
            }
            DenseSpec::UserStems(patterns)
        }
        other => return err(&o.at("type"), format!("unknown dense set {other:?}")),
    };
    o.finish()?;
    Ok(spec)
}

fn stem_pattern(v: &Value, path: &str) -> Result<StemPattern, ConfigError> {
    let mut o = Obj::new(v, path)?;
    let steps = list(o.req("steps")?, &o.at("steps"), step_constraint)?;
    let floor = match o.opt("floor") {
        Some(f) => {
            let mut fo = Obj::new(f, &o.at("floor"))?;
            let rule = floor_rule(&mut fo)?;
            fo.finish()?;
            Some(rule)
        }
        None => None,
    };
    o.finish()?;
    Ok(StemPattern { steps, floor })
}

fn step_constraint(v: &Value, path: &str) -> Result<StepConstraint, ConfigError> {
    let mut o = Obj::new(v, path)?;
    if o.map.len() != 1 {
        return err(path, "expected exactly one of min, mod, eq, max");
    }
    let c = if let Some(k) = o.opt("min") {
        StepConstraint::AtLeast(big_natural(k, &o.at("min"))?)
    } else if let Some(k) = o.opt("eq") {
        StepConstraint::Exactly(big_natural(k, &o.at("eq"))?)
    } else if let Some(k) = o.opt("max") {
        StepConstraint::AtMost(big_natural(k, &o.at("max"))?)
    } else if let Some(qr) = o.opt("mod") {
        let at = o.at("mod");
        let qr = list(qr, &at, big_natural)?;
        let [modulus, residue]: [Nat; 2] = qr.try_into().or_else(|_| err(&at, "expected [modulus, residue]"))?;
        if modulus == Nat::from(0u32) || residue >= modulus {
            return err(&at, "need 0 <= residue < modulus");
        }
        StepConstraint::Residue { modulus, residue }
    } else {
        return err(path, "expected exactly one of min, mod, eq, max");
    };
    o.finish()?;
    Ok(c)
}

fn bits(v: &Value, path: &str) -> Result<BinaryString, ConfigError> {
    match v.as_str() {
        Some(s) if !s.is_empty() && s.bytes().all(|b| b == b'0' || b == b'1') => {
            Ok(s.parse().expect("checked alphabet"))
        }
        _ => err(path, "expected a non-empty string of 0s and 1s"),
    }
}

fn cohen_spec(v: &Value, path: &str) -> Result<CohenSpec, ConfigError> {
    let mut o = Obj::new(v, path)?;
    let kind = o.req("type")?;
    let kind = kind
        .as_str()
        .map_or_else(|| err(&o.at("type"), "expected a string"), Ok)?;
    let spec = match kind {
        "contains" => CohenSpec::Contains(bits(o.req("w")?, &o.at("w"))?),
        "ends_with" => CohenSpec::EndsWith(bits(o.req("w")?, &o.at("w"))?),
        "min_len" => {
            let n = natural(o.req("n")?, &o.at("n"))?;
            CohenSpec::MinLen(usize::try_from(n).or_else(|_| err(&o.at("n"), "too large"))?)
        }
        other => return err(&o.at("type"), format!("unknown dense set {other:?}")),
    };
    o.finish()?;
    Ok(spec)
}
