//! Small prime helpers: sieving, the n-th prime, π(x), and a primality test
//! for arbitrary naturals.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Nat;

/// Largest bound for which [`prime_pi_below`] will sieve.
pub(crate) const PI_LIMIT: u64 = 1 << 25;

/// Primes `≤ bound`.
pub(crate) fn sieve(bound: usize) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for p in 2..=bound {
        if composite[p] {
            continue;
        }
        out.push(p as u64);
        let mut m = p * p;
        while m <= bound {
            composite[m] = true;
            m += p;
        }
    }
    out
}

/// Unbounded ascending stream of primes by trial division.
#[derive(Default)]
pub(crate) struct PrimeIter {
    found: Vec<u64>,
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let mut c = self.found.last().map_or(2, |&p| p + 1);
        while self.found.iter().take_while(|&&p| p * p <= c).any(|&p| c % p == 0) {
            c += 1;
        }
        self.found.push(c);
        Some(c)
    }
}

/// The first `count` primes.
pub(crate) fn first_primes(count: usize) -> Vec<u64> {
    let mut bound = 32usize;
    loop {
        let mut ps = sieve(bound);
        if ps.len() >= count {
            ps.truncate(count);
            return ps;
        }
        bound *= 2;
    }
}

/// The `n`-th prime, counting from `nth_prime(0) = 2`.
pub(crate) fn nth_prime(n: usize) -> u64 {
    first_primes(n + 1)[n]
}

/// Number of primes `< x`, or `None` beyond [`PI_LIMIT`].
pub(crate) fn prime_pi_below(x: u64) -> Option<u64> {
    if x > PI_LIMIT {
        return None;
    }
    if x < 3 {
        return Some(0);
    }
    Some(sieve(x as usize - 1).len() as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary natural. Exact below 2^64; above that a
/// Miller-Rabin test with the first twelve prime bases.
pub(crate) fn is_prime(n: &Nat) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = Nat::one();
    let minus_one = n - &one;
    let s = minus_one.trailing_zeros().unwrap_or(0);
    let d = &minus_one >> s;
    'witness: for a in WITNESSES {
        let mut x = Nat::from(a).modpow(&d, n);
        if x == one || x == minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Multiplicity of `p` in `n`, dividing it out.
pub(crate) fn strip_factor(n: &mut Nat, p: u64) -> u64 {
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&Nat::from(p));
        if !r.is_zero() || n.is_zero() {
            return e;
        }
        *n = q;
        e += 1;
    }
}
