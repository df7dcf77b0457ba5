//! Young-diagram primitives: partition enumeration, conjugation, hook
//! lengths, and exact tableau counting via the hook length formula.
//!
//! The two sums at the heart of the crate live here as well:
//! [`g_direct`] counts permutations of length n with no increasing
//! subsequence of length d, and [`b_direct`] those with at least one,
//! both as sums of squared standard-tableau counts over Young diagrams.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition of a nonnegative integer, i.e. a Young diagram.
///
/// Parts are weakly decreasing positive integers; trailing zeros are never
/// stored, so every diagram has exactly one representation and the empty
/// partition is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

/// A cell (i, j) of a Young diagram, with 1-based row and column indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl Partition {
    /// Builds a partition after checking that `parts` is weakly decreasing
    /// and strictly positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        let positive = parts.last().map_or(true, |&p| p > 0);
        if !decreasing || !positive {
            return Err(Error::InvalidPartition);
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    /// The empty partition of 0.
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            size: 0,
        }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    /// The parts, weakly decreasing.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of cells |lambda|.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of rows (parts).
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The conjugate diagram: rows become columns and vice versa.
    pub fn conjugate(&self) -> Partition {
        let rows = self.rows();
        if rows == 0 {
            return Partition::empty();
        }
        let mut parts = Vec::with_capacity(self.parts[0]);
        for j in 1..=self.parts[0] {
            // lambda'_j = #{ i : lambda_i >= j }; parts are sorted, so a
            // linear scan from the previous count would also do, but the
            // partitions here are small.
            parts.push(self.parts.iter().take_while(|&&p| p >= j).count());
        }
        Partition::from_parts_unchecked(parts)
    }

    /// Hook length of a cell: arm + leg + 1, i.e.
    /// (lambda_i - i) + (lambda'_j - j) + 1.
    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        let Cell { row, col } = cell;
        if row == 0 || col == 0 || row > self.rows() || col > self.parts[row - 1] {
            return Err(Error::CellOutsideDiagram { row, col });
        }
        let conj = self.conjugate();
        // Summands first: the two parts individually clear row and col, so
        // the usize arithmetic cannot underflow in this order.
        Ok(self.parts[row - 1] + conj.parts[col - 1] + 1 - row - col)
    }

    /// Product of all hook lengths of the diagram.
    pub fn hook_product(&self) -> BigInt {
        let conj = self.conjugate();
        let mut product = BigInt::one();
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len {
                let hook = len + conj.parts[j] + 1 - (i + 1) - (j + 1);
                product *= hook;
            }
        }
        product
    }

    /// Number of standard Young tableaux of this shape, by the hook length
    /// formula f = n! / prod of hooks. The division must be exact; a
    /// nonzero remainder means a hook computation bug and panics.
    pub fn count_syt(&self) -> BigInt {
        let numerator = factorial(self.size);
        let denominator = self.hook_product();
        let (quotient, remainder) = num_integer::div_rem(numerator, denominator);
        assert!(
            remainder.is_zero(),
            "internal error: hook product does not divide {}! for shape {:?}",
            self.size,
            self.parts
        );
        quotient
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Partition({:?})", self.parts)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// n! as an exact integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// All partitions of `n`, in reverse-lexicographic order of parts.
///
/// The order starts with the single-row partition (n) and ends with the
/// single-column 1^n; `partitions_of(0)` is the singleton list holding the
/// empty partition.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_parts_unchecked(current.clone()));
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// Partitions of every k from 0 through `r`, concatenated in order of k.
pub fn partitions_up_to(r: usize) -> Vec<Partition> {
    (0..=r).flat_map(partitions_of).collect()
}

/// G_d(n): permutations of length n with no increasing subsequence of
/// length d, as the sum of f_lambda^2 over diagrams with fewer than d rows.
pub fn g_direct(d: usize, n: usize) -> BigInt {
    assert!(d >= 1, "g_direct requires d >= 1");
    let mut sum = BigInt::zero();
    for shape in partitions_of(n) {
        if shape.rows() < d {
            let f = shape.count_syt();
            sum += &f * &f;
        }
    }
    sum
}

/// B_d(n): permutations of length n with at least one increasing
/// subsequence of length d, as the sum of f_lambda^2 over diagrams with at
/// least d rows. Satisfies b_direct(d, n) + g_direct(d, n) = n!.
pub fn b_direct(d: usize, n: usize) -> BigInt {
    assert!(d >= 1, "b_direct requires d >= 1");
    let mut sum = BigInt::zero();
    for shape in partitions_of(n) {
        if shape.rows() >= d {
            let f = shape.count_syt();
            sum += &f * &f;
        }
    }
    sum
}
