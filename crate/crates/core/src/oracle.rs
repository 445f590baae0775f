//! Exhaustive ground truth for factorizations and length sets.
//!
//! Two computation paths: full coefficient enumeration (exponential, gated by
//! a work limit) and a length-indexed reachability table over values `0..=n`
//! (pseudo-polynomial, the default for length sets).  Everything downstream
//! that claims a closed form is checked against this module.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Default budget of visited dynamic-programming states.
pub const DEFAULT_WORK_LIMIT: u64 = 10_000_000;

/// One factorization `n = q_1 n_1 + ... + q_k n_k` with coefficients aligned
/// to the semigroup's sorted generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub coeffs: Vec<u64>,
    pub value: u64,
    pub length: u64,
}

/// The sorted set of factorization lengths of one element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthSet {
    pub element: u64,
    pub lengths: Vec<u64>,
}

impl LengthSet {
    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.lengths.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.lengths.last().copied()
    }

    /// Set of successive gaps, the delta set of the element.
    pub fn delta(&self) -> BTreeSet<u64> {
        self.lengths.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Complete duplicate-free list of coefficient vectors representing `n`.
/// Empty iff `n` is not a member.  Each recursive call counts one work state.
pub fn enumerate_factorizations(
    t: &NumericalSemigroup,
    n: u64,
    work_limit: u64,
) -> Result<Vec<Factorization>> {
    let gens = t.generators();
    let mut out = Vec::new();
    let mut coeffs = vec![0u64; gens.len()];
    let mut states = 0u64;
    descend(gens, gens.len() - 1, n, &mut coeffs, &mut out, &mut states, work_limit)?;
    out.reverse(); // ascending in the largest-generator coefficient last
    Ok(out)
}

fn descend(
    gens: &[u64],
    idx: usize,
    remaining: u64,
    coeffs: &mut Vec<u64>,
    out: &mut Vec<Factorization>,
    states: &mut u64,
    work_limit: u64,
) -> Result<()> {
    *states += 1;
    if *states > work_limit {
        return Err(Error::WorkLimitExceeded {
            limit: work_limit,
            needed: *states,
        });
    }
    if idx == 0 {
        if remaining % gens[0] == 0 {
            coeffs[0] = remaining / gens[0];
            let length = coeffs.iter().sum();
            out.push(Factorization {
                coeffs: coeffs.clone(),
                value: coeffs.iter().zip(gens).map(|(q, g)| q * g).sum(),
                length,
            });
            coeffs[0] = 0;
        }
        return Ok(());
    }
    for q in 0..=remaining / gens[idx] {
        coeffs[idx] = q;
        descend(gens, idx - 1, remaining - q * gens[idx], coeffs, out, states, work_limit)?;
    }
    coeffs[idx] = 0;
    Ok(())
}

/// Length-indexed reachability table for all values `0..=max_value`.
///
/// Row `v` is a bitset over lengths; bit `l` is set iff `v` has a
/// factorization of length `l`.  Building row `v` from row `v - g` for every
/// generator `g` visits `(max_value + 1) * k` states, which is the quantity
/// charged against the work limit.
pub struct LengthTable<'a> {
    semigroup: &'a NumericalSemigroup,
    max_value: u64,
    words: usize,
    bits: Vec<u64>,
}

impl<'a> LengthTable<'a> {
    /// Work charged for a standalone length-set computation of `n`.
    pub fn work_for(t: &NumericalSemigroup, n: u64) -> u64 {
        (n + 1) * t.embedding_dim() as u64
    }

    pub fn build(t: &'a NumericalSemigroup, max_value: u64, work_limit: u64) -> Result<Self> {
        let needed = Self::work_for(t, max_value);
        if needed > work_limit {
            return Err(Error::WorkLimitExceeded {
                limit: work_limit,
                needed,
            });
        }
        let words = (max_value / t.smallest_gen() / 64 + 1) as usize;
        let rows = (max_value + 1) as usize;
        let mut bits = vec![0u64; words * rows];
        bits[0] = 1; // L(0) = {0}
        for v in 1..=max_value {
            let (done, row) = bits.split_at_mut(v as usize * words);
            let row = &mut row[..words];
            for &g in t.generators() {
                if g > v {
                    break;
                }
                let src = &done[(v - g) as usize * words..][..words];
                let mut carry = 0u64;
                for (dst, &s) in row.iter_mut().zip(src) {
                    *dst |= (s << 1) | carry;
                    carry = s >> 63;
                }
            }
        }
        Ok(LengthTable {
            semigroup: t,
            max_value,
            words,
            bits,
        })
    }

    pub fn max_value(&self) -> u64 {
        self.max_value
    }

    /// The length set of `n` (empty for non-members).
    pub fn length_set(&self, n: u64) -> LengthSet {
        assert!(n <= self.max_value);
        let row = &self.bits[n as usize * self.words..][..self.words];
        let mut lengths = Vec::new();
        for (w, &word) in row.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as u64;
                lengths.push(w as u64 * 64 + b);
                word &= word - 1;
            }
        }
        debug_assert_eq!(!lengths.is_empty(), self.semigroup.contains(n));
        LengthSet { element: n, lengths }
    }
}

/// The set of factorization lengths of `n`, via the reachability table.
pub fn length_set(t: &NumericalSemigroup, n: u64, work_limit: u64) -> Result<LengthSet> {
    Ok(LengthTable::build(t, n, work_limit)?.length_set(n))
}

/// The j-th largest factorization length of `n` (j = 1 is the maximum).
pub fn max_len(t: &NumericalSemigroup, n: u64, j: u64, work_limit: u64) -> Result<u64> {
    nth(&length_set(t, n, work_limit)?, j, true)
}

/// The j-th smallest factorization length of `n` (j = 1 is the minimum).
pub fn min_len(t: &NumericalSemigroup, n: u64, j: u64, work_limit: u64) -> Result<u64> {
    nth(&length_set(t, n, work_limit)?, j, false)
}

pub(crate) fn nth(ls: &LengthSet, j: u64, from_top: bool) -> Result<u64> {
    assert!(j >= 1);
    if (ls.lengths.len() as u64) < j {
        return Err(Error::NotEnoughLengths {
            element: ls.element,
            available: ls.lengths.len(),
            requested: j,
        });
    }
    let idx = if from_top {
        ls.lengths.len() - j as usize
    } else {
        (j - 1) as usize
    };
    Ok(ls.lengths[idx])
}

/// Delta set of `n`: successive differences within the length set.
pub fn delta_set(t: &NumericalSemigroup, n: u64, work_limit: u64) -> Result<BTreeSet<u64>> {
    Ok(length_set(t, n, work_limit)?.delta())
}

/// Outcome of checking the elementary length bounds
/// `n/n_k <= m(n) <= n/n_k + (n_k - n_1)` and `M(n) <= n/n_1` for one member.
///
/// Slacks are the bound inequalities cleared of denominators, so a violation
/// shows as a negative entry.  A violation indicates an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthBoundsReport {
    pub element: u64,
    /// `n_k * m(n) - n`
    pub min_lower_slack: i64,
    /// `n + n_k (n_k - n_1) - n_k * m(n)`
    pub min_upper_slack: i64,
    /// `n - n_1 * M(n)`
    pub max_slack: i64,
    pub holds: bool,
}

pub fn check_length_bounds(
    t: &NumericalSemigroup,
    n: u64,
    work_limit: u64,
) -> Result<LengthBoundsReport> {
    let ls = length_set(t, n, work_limit)?;
    assert!(!ls.is_empty(), "check_length_bounds requires a member");
    let (n1, nk) = (t.smallest_gen() as i64, t.largest_gen() as i64);
    let (m, big_m) = (ls.min().unwrap() as i64, ls.max().unwrap() as i64);
    let n = n as i64;
    let min_lower_slack = nk * m - n;
    let min_upper_slack = n + nk * (nk - n1) - nk * m;
    let max_slack = n - n1 * big_m;
    Ok(LengthBoundsReport {
        element: n as u64,
        min_lower_slack,
        min_upper_slack,
        max_slack,
        holds: min_lower_slack >= 0 && min_upper_slack >= 0 && max_slack >= 0,
    })
}
