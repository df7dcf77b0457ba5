//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors reported by the library.
///
/// Precondition violations on small numeric arguments (`d = 0`, mismatched
/// dimensions) panic instead; this enum covers domain errors a caller can
/// trigger with otherwise well-typed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parts were not weakly decreasing and positive.
    #[error("invalid partition: parts must be weakly decreasing and positive")]
    InvalidPartition,

    /// A cell index outside the Young diagram.
    #[error("cell ({row},{col}) lies outside the diagram")]
    CellOutsideDiagram { row: usize, col: usize },

    /// The values were not a bijection on 1..=n.
    #[error("invalid permutation: values must contain each of 1..=n exactly once")]
    InvalidPermutation,

    /// Brute-force enumeration over n! permutations was refused.
    #[error("refusing brute force over {n}! permutations (limit n <= {limit})")]
    BruteForceLimit { n: usize, limit: usize },

    /// Backtracking tableau enumeration was refused.
    #[error("refusing tableau backtracking for |lambda| = {size} (limit {limit})")]
    BacktrackLimit { size: usize, limit: usize },

    /// Two truncated series with different caps were combined.
    #[error("series cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    /// A factorial argument too large to materialize as an integer.
    #[error("{arg}! is too large to materialize; use the symbolic form")]
    FactorialTooLarge { arg: String },

    /// Evaluation requested below the validity bound d >= r - 1.
    #[error("d = {d} is below the validity bound d >= {bound} for offset r = {r}")]
    OutsideValidityDomain { d: String, bound: String, r: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
