//! Exact counting of permutations by longest increasing subsequence.
//!
//! For n-element permutations and a threshold d, write G_d(n) for the
//! number with no increasing subsequence of length d and B_d(n) for the
//! number with one; G_d(n) + B_d(n) = n!. Everything here computes these
//! two counts exactly, by three independent routes:
//!
//! - [`partitions`]: the defining sums of squared standard-Young-tableau
//!   counts over Young diagrams, via the hook length formula.
//! - [`symbolic`]: for n = d + r with fixed small r, B_d(d + r) collapses
//!   to an explicit polynomial in d of degree 2r, valid for d >= r - 1.
//!   This evaluates in milliseconds even for d with hundreds of digits.
//! - [`seriesdet`]: the full sequence G_d(1..N) from the determinant of a
//!   matrix of truncated Bessel-type series, computed division-free.
//!
//! [`oracle`] holds the brute-force ground truth (permutation enumeration,
//! patience sorting, Schensted insertion, tableau backtracking) that the
//! fast paths are tested against.
//!
//! All arithmetic is arbitrary-precision and exact; there is no floating
//! point anywhere.
//!
//! ```
//! use liscount::{b_poly, gessel_sequence, Partition};
//! use num_bigint::BigInt;
//!
//! // Permutations of length d + 1 with an increasing run of length d.
//! assert_eq!(b_poly(1).to_string(), "d^2 + 1");
//!
//! // Catalan numbers: permutations avoiding an increasing triple.
//! let catalan = gessel_sequence(3, 5);
//! assert_eq!(catalan, vec![1, 2, 5, 14, 42].into_iter().map(BigInt::from).collect::<Vec<_>>());
//!
//! // 14 standard fillings of the 4 x 2 rectangle.
//! let shape = Partition::new(vec![2, 2, 2, 2]).unwrap();
//! assert_eq!(shape.count_syt(), BigInt::from(14u32));
//! ```

pub mod error;
pub mod oracle;
pub mod partitions;
pub mod seriesdet;
pub mod symbolic;

pub use error::{Error, Result};
pub use oracle::{count_by_lis_brute, enumerate_syt, Permutation};
pub use partitions::{
    b_direct, factorial, g_direct, partitions_of, partitions_up_to, Cell, Partition,
};
pub use seriesdet::{
    bessel_trunc, cofactor_det, division_free_det, gessel_matrix, gessel_sequence, series_mul,
    SeriesMatrix, TruncatedSeries,
};
pub use symbolic::{
    b_poly, f_poly, g_count, g_count_symbolic, validity_bound, RatPolynomial, ShapeDecomposition,
    SymbolicCount,
};
