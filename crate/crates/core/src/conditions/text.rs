//! Parsing of the canonical condition text form produced by `Display`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use thiserror::Error;

use super::{FloorRule, HechlerCondition, Node};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("condition text, byte {offset}: {message}")]
pub struct ParseConditionError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl ToString) -> ParseConditionError {
        ParseConditionError {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> Result<(), ParseConditionError> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.err(alloc::format!("expected `{token}`")))
        }
    }

    fn peek(&self, token: &str) -> bool {
        self.rest().starts_with(token)
    }

    fn nat(&mut self) -> Result<Nat, ParseConditionError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.err("expected a natural number"));
        }
        let text = &self.rest()[..digits];
        if digits > 1 && text.starts_with('0') {
            return Err(self.err("leading zero"));
        }
        let n = Nat::parse_bytes(text.as_bytes(), 10).ok_or_else(|| self.err("bad number"))?;
        self.pos += digits;
        Ok(n)
    }

    /// `open item (sep item)* close`, possibly empty.
    fn list<T>(
        &mut self,
        open: &str,
        close: &str,
        sep: &str,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseConditionError>,
    ) -> Result<Vec<T>, ParseConditionError> {
        self.eat(open)?;
        let mut out = Vec::new();
        if self.peek(close) {
            self.eat(close)?;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.peek(sep) {
                self.eat(sep)?;
            } else {
                self.eat(close)?;
                return Ok(out);
            }
        }
    }

    fn nat_list(&mut self) -> Result<Vec<Nat>, ParseConditionError> {
        self.list("[", "]", ",", Self::nat)
    }
}

/// Parses `[a,b,c]` into a node.
pub fn parse_node(text: &str) -> Result<Node, ParseConditionError> {
    let mut c = Cursor { text, pos: 0 };
    let node = Node::new(c.nat_list()?);
    if !c.rest().is_empty() {
        return Err(c.err("trailing input"));
    }
    Ok(node)
}

impl FromStr for Node {
    type Err = ParseConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_node(s)
    }
}

impl FromStr for HechlerCondition {
    type Err = ParseConditionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut c = Cursor { text, pos: 0 };
        c.eat("stem=")?;
        let stem = Node::new(c.nat_list()?);
        c.eat(";excl")?;
        let atoms = c.list("{", "}", ";", |c| {
            let key = Node::new(c.nat_list()?);
            c.eat(":")?;
            let zs = c.list("{", "}", ",", Cursor::nat)?;
            Ok((key, zs))
        })?;
        c.eat(";floor(")?;
        let floor = if c.peek("-") {
            c.eat("-)")?;
            None
        } else {
            c.eat("table=")?;
            let table = c.nat_list()?;
            c.eat(",a=")?;
            let a = c.nat()?;
            c.eat(",b=")?;
            let b = c.nat()?;
            c.eat(")")?;
            Some(FloorRule::new(table, a, b))
        };
        if !c.rest().is_empty() {
            return Err(c.err("trailing input"));
        }

        let mut exclusions: BTreeMap<Node, BTreeSet<Nat>> = BTreeMap::new();
        let mut last_key: Option<Node> = None;
        for (key, zs) in atoms {
            if last_key.as_ref().is_some_and(|k| *k >= key) {
                return Err(c.err(alloc::format!("exclusion key {key} out of order")));
            }
            if zs.is_empty() || zs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(c.err(alloc::format!("exclusion set at {key} not strictly ascending")));
            }
            last_key = Some(key.clone());
            exclusions.insert(key, zs.into_iter().collect());
        }
        HechlerCondition::new(stem, exclusions, floor).map_err(|e| c.err(e))
    }
}
