use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use crate::Nat;

/// A finite sequence of naturals, i.e. a node of `ω^{<ω}`.
///
/// Ordering is lexicographic with proper prefixes first, which is the order
/// used when rendering exclusion keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node(Vec<Nat>);

impl Node {
    /// The empty sequence.
    pub fn root() -> Self {
        Node(Vec::new())
    }

    pub fn new(entries: Vec<Nat>) -> Self {
        Node(entries)
    }

    pub fn entries(&self) -> &[Nat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Nat> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &Node) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_comparable(&self, other: &Node) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    /// `self ⌢ z`.
    pub fn child(&self, z: Nat) -> Node {
        let mut entries = Vec::with_capacity(self.0.len() + 1);
        entries.extend_from_slice(&self.0);
        entries.push(z);
        Node(entries)
    }

    pub fn push(&mut self, z: Nat) {
        self.0.push(z);
    }

    /// The prefix of length `len` (the whole node if `len` is too large).
    pub fn prefix(&self, len: usize) -> Node {
        Node(self.0[..len.min(self.0.len())].to_vec())
    }

    pub fn last(&self) -> Option<&Nat> {
        self.0.last()
    }
}

impl Borrow<[Nat]> for Node {
    fn borrow(&self) -> &[Nat] {
        &self.0
    }
}

impl From<Vec<Nat>> for Node {
    fn from(entries: Vec<Nat>) -> Self {
        Node(entries)
    }
}

impl From<&[u64]> for Node {
    fn from(entries: &[u64]) -> Self {
        Node(entries.iter().map(|&z| Nat::from(z)).collect())
    }
}

impl<const N: usize> From<[u64; N]> for Node {
    fn from(entries: [u64; N]) -> Self {
        Node::from(&entries[..])
    }
}

impl From<Vec<u64>> for Node {
    fn from(entries: Vec<u64>) -> Self {
        Node::from(&entries[..])
    }
}

/// Renders as `[a,b,c]` with no spaces.
impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_nat_list(f, self.0.iter())
    }
}

pub(crate) fn write_nat_list<'a>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = &'a Nat>) -> fmt::Result {
    f.write_str("[")?;
    for (i, z) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{z}")?;
    }
    f.write_str("]")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn prefix_relations() {
        let a = Node::from([1, 3]);
        let b = Node::from([1, 3, 5]);
        let c = Node::from([1, 4]);
        assert!(a.is_prefix_of(&b));
        assert!(a.is_prefix_of(&a));
        assert!(!b.is_prefix_of(&a));
        assert!(a.is_comparable(&b) && b.is_comparable(&a));
        assert!(!b.is_comparable(&c));
        assert!(Node::root().is_prefix_of(&c));
    }

    #[test]
    fn order_puts_prefixes_first() {
        let mut nodes = [Node::from([2]), Node::from([1, 5]), Node::from([1]), Node::root()];
        nodes.sort();
        assert_eq!(
            nodes,
            [Node::root(), Node::from([1]), Node::from([1, 5]), Node::from([2])]
        );
    }

    #[test]
    fn renders_compactly() {
        assert_eq!(Node::from([1, 20, 3]).to_string(), "[1,20,3]");
        assert_eq!(Node::root().to_string(), "[]");
    }
}
