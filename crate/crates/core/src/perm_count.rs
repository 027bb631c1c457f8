//! Counting permutations of `1..=n` with exactly `k` increasing
//! 2-sequences (value `i` immediately followed by `i + 1`).
//!
//! `P(i, k) = (i-k-1)·P(i-1, k) + (k+1)·P(i-1, k+1) + P(i-1, k-1)`,
//! from the three ways of inserting element `i` into an `(i-1)`-permutation.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    ExactBigint,
    /// Residues modulo `M >= 2`.
    Modular(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Exact(BigUint),
    Modular(u64),
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Exact(v) => write!(f, "{v}"),
            Count::Modular(v) => write!(f, "{v}"),
        }
    }
}

/// Arithmetic used by the recurrence: small multipliers only.
trait Ring: Clone {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn add(&self, a: &Self, b: &Self) -> Self;
    fn scale(&self, a: &Self, by: u64) -> Self;
}

impl Ring for BigUint {
    fn zero(&self) -> Self {
        BigUint::ZERO
    }
    fn one(&self) -> Self {
        BigUint::from(1u8)
    }
    fn add(&self, a: &Self, b: &Self) -> Self {
        a + b
    }
    fn scale(&self, a: &Self, by: u64) -> Self {
        a * by
    }
}

/// A residue tagged with its modulus.
#[derive(Debug, Clone, Copy)]
struct Residue {
    value: u64,
    modulus: u64,
}

impl Ring for Residue {
    fn zero(&self) -> Self {
        Residue { value: 0, ..*self }
    }
    fn one(&self) -> Self {
        Residue { value: 1 % self.modulus, ..*self }
    }
    fn add(&self, a: &Self, b: &Self) -> Self {
        let value = ((a.value as u128 + b.value as u128) % self.modulus as u128) as u64;
        Residue { value, ..*self }
    }
    fn scale(&self, a: &Self, by: u64) -> Self {
        let value = ((a.value as u128 * (by % self.modulus) as u128) % self.modulus as u128) as u64;
        Residue { value, ..*self }
    }
}

/// Row `i` from row `i - 1` (`prev[k] = P(i-1, k)`, length `i - 1`).
fn next_row<R: Ring>(ring: &R, prev: &[R], i: usize) -> Vec<R> {
    let zero = ring.zero();
    let at = |k: isize| if k < 0 { &zero } else { prev.get(k as usize).unwrap_or(&zero) };
    (0..i)
        .map(|k| {
            let kk = k as isize;
            let stay = ring.scale(at(kk), (i - k - 1) as u64);
            let split = ring.scale(at(kk + 1), (k + 1) as u64);
            ring.add(&ring.add(&stay, &split), at(kk - 1))
        })
        .collect()
}

fn rows<R: Ring>(ring: &R, n: usize, mut visit: impl FnMut(&[R])) -> Vec<R> {
    let mut row = vec![ring.one()];
    visit(&row);
    for i in 2..=n {
        row = next_row(ring, &row, i);
        visit(&row);
    }
    row
}

fn check_mode(mode: CountMode) -> Result<()> {
    match mode {
        CountMode::Modular(m) if m < 2 => Err(Error::Invalid(format!("modulus must be at least 2, got {m}"))),
        _ => Ok(()),
    }
}

/// `P(n, k)`, keeping only two table rows.
pub fn count_permutations(n: usize, k: usize, mode: CountMode) -> Result<Count> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    if k >= n {
        return Err(Error::Invalid(format!("k must be below n ({k} >= {n})")));
    }
    check_mode(mode)?;
    Ok(match mode {
        CountMode::ExactBigint => Count::Exact(rows(&BigUint::ZERO, n, |_| {}).swap_remove(k)),
        CountMode::Modular(m) => {
            Count::Modular(rows(&Residue { value: 0, modulus: m }, n, |_| {})[k].value)
        }
    })
}

/// All rows `P(i, ·)` for `1 <= i <= n`; row `i` has `i` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermCountTable {
    pub mode: CountMode,
    pub rows: Vec<Vec<Count>>,
}

impl PermCountTable {
    /// `P(i, k)`, zero outside `0 <= k < i`.
    pub fn get(&self, i: usize, k: usize) -> Count {
        match self.rows.get(i.wrapping_sub(1)).and_then(|r| r.get(k)) {
            Some(c) => c.clone(),
            None => match self.mode {
                CountMode::ExactBigint => Count::Exact(BigUint::ZERO),
                CountMode::Modular(_) => Count::Modular(0),
            },
        }
    }
}

pub fn count_table(n: usize, mode: CountMode) -> Result<PermCountTable> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    check_mode(mode)?;
    let mut out = Vec::with_capacity(n);
    match mode {
        CountMode::ExactBigint => {
            rows(&BigUint::ZERO, n, |r| out.push(r.iter().cloned().map(Count::Exact).collect()));
        }
        CountMode::Modular(m) => {
            rows(&Residue { value: 0, modulus: m }, n, |r| out.push(r.iter().map(|c| Count::Modular(c.value)).collect()));
        }
    }
    Ok(PermCountTable { mode, rows: out })
}

/// Largest `n` accepted by the enumeration checks.
pub const ENUMERATION_LIMIT: usize = 8;

/// Number of positions where `perm[p+1] == perm[p] + step`.
pub fn count_steps(perm: &[usize], step: isize) -> usize {
    perm.windows(2).filter(|w| w[1] as isize - w[0] as isize == step).count()
}

/// By enumeration: for every `k`, as many permutations have `k`
/// increasing 2-sequences as have `k` decreasing ones.
pub fn decreasing_equivalence_check(n: usize) -> Result<bool> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(Error::Invalid(format!("n must be in 1..={ENUMERATION_LIMIT}")));
    }
    let mut increasing = vec![0u64; n];
    let mut decreasing = vec![0u64; n];
    for perm in (1..=n).permutations(n) {
        increasing[count_steps(&perm, 1)] += 1;
        decreasing[count_steps(&perm, -1)] += 1;
    }
    Ok(increasing == decreasing)
}
