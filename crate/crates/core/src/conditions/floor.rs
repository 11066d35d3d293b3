use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::conditions::node::write_nat_list;
use crate::Nat;

/// A total function `f : ω → ω` given by a finite table followed by an
/// affine tail: `f(n) = table[n]` for `n < table.len()`, else
/// `f(n) = slope·n + intercept`.
///
/// A condition carrying a floor keeps, at every node of level `ℓ` above the
/// stem, only the successors `z > f(ℓ)`. Because both the table and the tail
/// are finite data, pointwise maximum and pointwise dominance are decidable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FloorRule {
    table: Vec<Nat>,
    slope: Nat,
    intercept: Nat,
}

impl FloorRule {
    pub fn new(table: Vec<Nat>, slope: Nat, intercept: Nat) -> Self {
        FloorRule {
            table,
            slope,
            intercept,
        }
    }

    /// `f ≡ b`.
    pub fn constant(b: u64) -> Self {
        FloorRule::new(Vec::new(), Nat::zero(), Nat::from(b))
    }

    /// `f(n) = a·n + b`.
    pub fn affine(a: u64, b: u64) -> Self {
        FloorRule::new(Vec::new(), Nat::from(a), Nat::from(b))
    }

    pub fn table(&self) -> &[Nat] {
        &self.table
    }

    pub fn slope(&self) -> &Nat {
        &self.slope
    }

    pub fn intercept(&self) -> &Nat {
        &self.intercept
    }

    pub fn eval(&self, level: usize) -> Nat {
        match self.table.get(level) {
            Some(v) => v.clone(),
            None => self.tail(level),
        }
    }

    fn tail(&self, level: usize) -> Nat {
        &self.slope * Nat::from(level) + &self.intercept
    }

    /// Pointwise maximum of two floors.
    ///
    /// The tail of the result is whichever line eventually wins; the table
    /// runs up to the first level where that line is strictly above the
    /// other one (so `max(2, n)` becomes table `[2,2,2]`, tail `n`).
    pub fn max(&self, other: &FloorRule) -> FloorRule {
        let (winner, loser) = match (self.slope.cmp(&other.slope), self.intercept.cmp(&other.intercept)) {
            (Ordering::Greater, _) | (Ordering::Equal, Ordering::Greater | Ordering::Equal) => (self, other),
            _ => (other, self),
        };
        let crossover = strict_crossover(winner, loser);
        let len = self.table.len().max(other.table.len()).max(crossover);
        let table = (0..len)
            .map(|n| {
                let (a, b) = (self.eval(n), other.eval(n));
                if a >= b {
                    a
                } else {
                    b
                }
            })
            .collect();
        FloorRule::new(table, winner.slope.clone(), winner.intercept.clone())
    }

    /// The least level `ℓ ≥ from` with `self(ℓ) < other(ℓ)`, if any.
    ///
    /// The level is returned as a natural because an affine crossover can lie
    /// beyond `usize`.
    pub fn first_shortfall(&self, other: &FloorRule, from: usize) -> Option<Nat> {
        let tabled = self.table.len().max(other.table.len()).max(from);
        if let Some(level) = (from..tabled).find(|&n| self.eval(n) < other.eval(n)) {
            return Some(Nat::from(level));
        }
        // Beyond the tables: d(ℓ) = (a_s - a_o)·ℓ + (b_s - b_o).
        let slope_diff = signed(&self.slope) - signed(&other.slope);
        let intercept_diff = signed(&self.intercept) - signed(&other.intercept);
        let at_start = &slope_diff * BigInt::from(tabled) + &intercept_diff;
        if at_start.sign() == Sign::Minus {
            return Some(Nat::from(tabled));
        }
        if slope_diff.sign() != Sign::Minus {
            return None;
        }
        // Decreasing and still non-negative at `tabled`, so the intercept
        // difference is non-negative too.
        let drop = (-slope_diff).magnitude().clone();
        let level = intercept_diff.magnitude() / &drop + 1u32;
        Some(level)
    }

    /// `self(ℓ) ≥ other(ℓ)` for every `ℓ ≥ from`.
    pub fn dominates_from(&self, other: &FloorRule, from: usize) -> bool {
        self.first_shortfall(other, from).is_none()
    }
}

fn signed(n: &Nat) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.clone())
}

/// Least `N` such that `winner(n) > loser(n)` on both tails for all `n ≥ N`,
/// or 0 when the lines never cross.
fn strict_crossover(winner: &FloorRule, loser: &FloorRule) -> usize {
    if winner.slope == loser.slope || winner.intercept > loser.intercept {
        return 0;
    }
    let gap = &loser.intercept - &winner.intercept;
    let rise = &winner.slope - &loser.slope;
    let n = gap / rise + 1u32;
    // Crossovers that do not fit in memory as a table are not representable
    // anyway; saturate and let the allocation fail loudly.
    n.to_usize().unwrap_or(usize::MAX)
}

/// Renders as `floor(table=[..],a=A,b=B)`.
impl fmt::Display for FloorRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("floor(table=")?;
        write_nat_list(f, self.table.iter())?;
        write!(f, ",a={},b={})", self.slope, self.intercept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn nats(xs: &[u64]) -> Vec<Nat> {
        xs.iter().map(|&x| Nat::from(x)).collect()
    }

    #[test]
    fn eval_uses_table_then_tail() {
        let f = FloorRule::new(nats(&[9, 1]), Nat::from(2u32), Nat::from(3u32));
        assert_eq!(f.eval(0), Nat::from(9u32));
        assert_eq!(f.eval(1), Nat::from(1u32));
        assert_eq!(f.eval(2), Nat::from(7u32));
        assert_eq!(f.eval(10), Nat::from(23u32));
    }

    #[test]
    fn max_of_constant_and_identity() {
        let m = FloorRule::constant(2).max(&FloorRule::affine(1, 0));
        assert_eq!(m, FloorRule::new(nats(&[2, 2, 2]), Nat::from(1u32), Nat::zero()));
        // Oracle: evaluate both operands directly.
        for n in 0..=5usize {
            assert_eq!(m.eval(n), Nat::from(2.max(n as u64)));
        }
        // Symmetric.
        assert_eq!(FloorRule::affine(1, 0).max(&FloorRule::constant(2)), m);
    }

    #[test]
    fn max_with_equal_slopes_keeps_higher_line() {
        let m = FloorRule::affine(3, 1).max(&FloorRule::affine(3, 4));
        assert_eq!(m, FloorRule::affine(3, 4));
    }

    #[test]
    fn shortfall_in_table_region() {
        let f = FloorRule::new(nats(&[5, 0]), Nat::zero(), Nat::from(5u32));
        let g = FloorRule::constant(4);
        assert_eq!(f.first_shortfall(&g, 0), Some(Nat::from(1u32)));
        assert_eq!(f.first_shortfall(&g, 2), None);
    }

    #[test]
    fn shortfall_on_affine_tail() {
        // 10 vs n: fails first at n = 11.
        let ten = FloorRule::constant(10);
        let ident = FloorRule::affine(1, 0);
        assert_eq!(ten.first_shortfall(&ident, 0), Some(Nat::from(11u32)));
        assert_eq!(ident.first_shortfall(&ten, 0), Some(Nat::zero()));
        assert_eq!(ident.first_shortfall(&ten, 10), None);
        assert!(ident.dominates_from(&ten, 10));
    }

    #[test]
    fn renders() {
        let f = FloorRule::new(vec![Nat::from(2u32)], Nat::from(1u32), Nat::zero());
        assert_eq!(alloc::format!("{f}"), "floor(table=[2],a=1,b=0)");
    }
}
