//! Independent brute-force ground truth, kept free of the counting
//! machinery it validates.
//!
//! - [`Permutation::lis_length`]: longest strictly increasing subsequence
//!   via patience sorting
//! - [`Permutation::rsk_shape`]: insertion-tableau shape under Schensted
//!   row insertion
//! - [`count_by_lis_brute`]: exhaustive classification of all n!
//!   permutations by whether their LIS reaches a threshold
//! - [`enumerate_syt`]: standard-tableau counting by backtracking, with no
//!   reference to the hook length formula
//!
//! Both exhaustive operations carry hard size guards; they refuse rather
//! than run for hours.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest n for which [`count_by_lis_brute`] will enumerate n! permutations.
pub const BRUTE_FORCE_LIMIT: usize = 10;

/// Largest |lambda| accepted by [`enumerate_syt`].
pub const BACKTRACK_LIMIT: usize = 12;

/// A permutation of 1..=n.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation after checking that `values` contains each of
    /// 1..=n exactly once.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation);
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Length of the longest strictly increasing subsequence, by patience
    /// sorting: one pile top per pile, binary search for the leftmost top
    /// that is >= the incoming value. O(n log n).
    pub fn lis_length(&self) -> usize {
        lis_length_of(&self.values)
    }

    /// Shape of the insertion tableau under Schensted row insertion.
    ///
    /// By Schensted's theorem the first part equals [`Self::lis_length`];
    /// the total number of cells is n.
    pub fn rsk_shape(&self) -> Partition {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for &v in &self.values {
            let mut carry = v;
            let mut placed = false;
            for row in rows.iter_mut() {
                // First entry strictly greater than the carry gets bumped.
                let pos = row.partition_point(|&x| x < carry);
                if pos == row.len() {
                    row.push(carry);
                    placed = true;
                    break;
                }
                std::mem::swap(&mut row[pos], &mut carry);
            }
            if !placed {
                rows.push(vec![carry]);
            }
        }
        let parts: Vec<usize> = rows.iter().map(Vec::len).collect();
        Partition::from_parts_unchecked(parts)
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Permutation({:?})", self.values)
    }
}

fn lis_length_of(values: &[usize]) -> usize {
    let mut pile_tops: Vec<usize> = Vec::new();
    for &v in values {
        match pile_tops.binary_search(&v) {
            // Values are distinct, so only Err occurs; keep Ok for safety.
            Ok(pos) | Err(pos) => {
                if pos == pile_tops.len() {
                    pile_tops.push(v);
                } else {
                    pile_tops[pos] = v;
                }
            }
        }
    }
    pile_tops.len()
}

/// Classifies all n! permutations of length n by whether their longest
/// increasing subsequence reaches d. Returns (avoiders, containers) where
/// avoiders have LIS < d and the two counts sum to n!.
///
/// Enumeration is streaming, in lexicographic order, by the standard
/// successor algorithm; refuses n > [`BRUTE_FORCE_LIMIT`].
pub fn count_by_lis_brute(d: usize, n: usize) -> Result<(BigInt, BigInt)> {
    assert!(d >= 1, "count_by_lis_brute requires d >= 1");
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::BruteForceLimit {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut avoiders: u64 = 0;
    let mut total: u64 = 0;
    let mut values: Vec<usize> = (1..=n).collect();
    loop {
        total += 1;
        if lis_length_of(&values) < d {
            avoiders += 1;
        }
        if !next_lexicographic(&mut values) {
            break;
        }
    }
    Ok((BigInt::from(avoiders), BigInt::from(total - avoiders)))
}

/// Advances `values` to its lexicographic successor in place; returns false
/// once the last (descending) arrangement has been visited.
fn next_lexicographic(values: &mut [usize]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let pivot = i - 1;
    let mut j = values.len() - 1;
    while values[j] <= values[pivot] {
        j -= 1;
    }
    values.swap(pivot, j);
    values[i..].reverse();
    true
}

/// Counts standard Young tableaux of the given shape by backtracking:
/// place 1..n so that every row and column stays increasing. Independent
/// of the hook length formula; refuses |lambda| > [`BACKTRACK_LIMIT`].
pub fn enumerate_syt(shape: &Partition) -> Result<BigInt> {
    if shape.size() > BACKTRACK_LIMIT {
        return Err(Error::BacktrackLimit {
            size: shape.size(),
            limit: BACKTRACK_LIMIT,
        });
    }
    let parts = shape.parts();
    let mut filled = vec![0usize; parts.len()];
    let count = place_next(parts, &mut filled, shape.size());
    Ok(BigInt::from(count))
}

fn place_next(parts: &[usize], filled: &mut [usize], remaining: usize) -> u64 {
    if remaining == 0 {
        return 1;
    }
    let mut count = 0;
    for row in 0..parts.len() {
        // The next number may extend row i iff the row has space and stays
        // strictly shorter than the row above (column increase).
        if filled[row] < parts[row] && (row == 0 || filled[row] < filled[row - 1]) {
            filled[row] += 1;
            count += place_next(parts, filled, remaining - 1);
            filled[row] -= 1;
        }
    }
    count
}
