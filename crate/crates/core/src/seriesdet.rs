//! Sequence counts via a determinant of truncated Bessel-type series.
//!
//! The generating function sum G_d(n)/n!^2 t^(2n) equals the determinant
//! of the (d-1) x (d-1) matrix with entry (i, j) = I_|i-j|(2t), where
//! I_v(2t) = sum_j t^(2j+v)/(j! (j+v)!). Working modulo t^(2N+1) is exact
//! for the first N coefficients, so [`gessel_sequence`] truncates the
//! entries, takes the determinant using only ring operations (no series
//! inversion), and reads off [t^(2n)] times (n!)^2 for n = 1..N.
//!
//! The determinant is Bird's iteration: with mu(X) the copy of X that
//! zeroes the lower triangle and replaces each diagonal entry X_ii by
//! minus the sum of the diagonal entries below it, the sequence
//! F_1 = A, F_(k+1) = mu(F_k) A ends with det(A) = (-1)^(dim-1) times
//! the (1,1) entry of F_dim. Only +, -, x on series are ever used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partitions::factorial;

/// A power series in t with exact rational coefficients, carried modulo
/// t^(cap+1): index k holds the coefficient of t^k, and every operation
/// drops terms of degree above cap.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    cap: usize,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        TruncatedSeries {
            cap,
            coeffs: vec![BigRational::zero(); cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// From coefficients in ascending degree order; missing entries are
    /// zero and entries of degree above cap are dropped.
    pub fn from_coeffs(cap: usize, coeffs: Vec<BigRational>) -> Self {
        let mut full = coeffs;
        full.truncate(cap + 1);
        full.resize(cap + 1, BigRational::zero());
        TruncatedSeries { cap, coeffs: full }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Coefficient of t^k. Panics for k above the cap: that coefficient
    /// was dropped by truncation and is not zero by any convention.
    pub fn coeff(&self, k: usize) -> BigRational {
        assert!(k <= self.cap, "coefficient of t^{k} is beyond cap {}", self.cap);
        self.coeffs[k].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truncated product with an equal-cap series; callers have already
    /// checked the caps.
    fn convolve(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        debug_assert_eq!(self.cap, rhs.cap);
        let cap = self.cap;
        let mut coeffs = vec![BigRational::zero(); cap + 1];
        for (a, pa) in self.coeffs.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (b, qb) in rhs.coeffs.iter().take(cap + 1 - a).enumerate() {
                if !qb.is_zero() {
                    coeffs[a + b] += pa * qb;
                }
            }
        }
        TruncatedSeries { cap, coeffs }
    }

    fn add_assign_same_cap(&mut self, rhs: &TruncatedSeries) {
        debug_assert_eq!(self.cap, rhs.cap);
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
    }

    fn negate_in_place(&mut self) {
        for c in &mut self.coeffs {
            if !c.is_zero() {
                *c = -std::mem::take(c);
            }
        }
    }
}

impl std::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c < &BigRational::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &BigRational::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = if c < &BigRational::zero() { -c.clone() } else { c.clone() };
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruncatedSeries[cap {}]({self})", self.cap)
    }
}

/// Truncated product of two equal-cap series: coefficient k of the result
/// is the convolution sum over a + b = k, for k up to the shared cap.
pub fn series_mul(p: &TruncatedSeries, q: &TruncatedSeries) -> Result<TruncatedSeries> {
    if p.cap != q.cap {
        return Err(Error::CapMismatch {
            left: p.cap,
            right: q.cap,
        });
    }
    Ok(p.convolve(q))
}

/// The truncated Bessel-type series sum over j of t^(2j+v)/(j! (j+v)!),
/// keeping exactly the terms with 2j+v <= cap. The lowest nonzero term is
/// t^v with coefficient 1/v!; for v above cap the result is zero.
pub fn bessel_trunc(v: usize, cap: usize) -> TruncatedSeries {
    let mut series = TruncatedSeries::zero(cap);
    let mut j = 0;
    while 2 * j + v <= cap {
        series.coeffs[2 * j + v] =
            BigRational::new(BigInt::one(), factorial(j) * factorial(j + v));
        j += 1;
    }
    series
}

/// A square matrix of truncated series sharing one cap. The 0 x 0 matrix
/// is allowed and has determinant 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    dim: usize,
    cap: usize,
    entries: Vec<TruncatedSeries>,
}

impl SeriesMatrix {
    /// From entries in row-major order; their number must be dim squared
    /// and every cap must equal the stated one.
    pub fn new(dim: usize, cap: usize, entries: Vec<TruncatedSeries>) -> Result<Self> {
        assert_eq!(entries.len(), dim * dim, "need dim^2 entries");
        for e in &entries {
            if e.cap != cap {
                return Err(Error::CapMismatch {
                    left: cap,
                    right: e.cap,
                });
            }
        }
        Ok(SeriesMatrix { dim, cap, entries })
    }

    pub fn from_fn(
        dim: usize,
        cap: usize,
        mut f: impl FnMut(usize, usize) -> TruncatedSeries,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::new(dim, cap, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Entry at 0-based (row, col).
    pub fn entry(&self, row: usize, col: usize) -> &TruncatedSeries {
        assert!(row < self.dim && col < self.dim, "index outside matrix");
        &self.entries[row * self.dim + col]
    }

    fn rows(&self) -> Vec<Vec<TruncatedSeries>> {
        if self.dim == 0 {
            return Vec::new();
        }
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }
}

/// The ring interface Bird's iteration runs over. `positional_zero` takes
/// the matrix position so a representation that keys storage on the parity
/// of i + j can build the right zero; the dense series ignores it.
trait DetRing: Clone + Send + Sync {
    fn positional_zero(template: &Self, row: usize, col: usize) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn add_assign(&mut self, rhs: &Self);
    fn negate(&mut self);
}

impl DetRing for TruncatedSeries {
    fn positional_zero(template: &Self, _row: usize, _col: usize) -> Self {
        TruncatedSeries::zero(template.cap)
    }

    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.convolve(rhs)
    }

    fn add_assign(&mut self, rhs: &Self) {
        self.add_assign_same_cap(rhs);
    }

    fn negate(&mut self) {
        self.negate_in_place();
    }
}

/// mu(F): lower triangle zeroed, upper triangle copied, diagonal entry
/// (i, i) replaced by minus the sum of the diagonal entries below it.
fn mu_transform<T: DetRing>(f: &[Vec<T>]) -> Vec<Vec<T>> {
    let dim = f.len();
    let mut out: Vec<Vec<T>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if j > i {
                        f[i][j].clone()
                    } else {
                        T::positional_zero(&f[0][0], i, j)
                    }
                })
                .collect()
        })
        .collect();
    let mut below = T::positional_zero(&f[0][0], 0, 0);
    for i in (0..dim).rev() {
        let mut negated = below.clone();
        negated.negate();
        out[i][i] = negated;
        below.add_assign(&f[i][i]);
    }
    out
}

/// Row-major product. Each entry is accumulated independently in a fixed
/// k order, so the result is bit-identical however rayon schedules the
/// entries. Zero factors are skipped: the iteration zeroes whole rows of
/// its intermediates, and skipping them is most of the speedup.
fn mat_mul<T: DetRing>(x: &[Vec<T>], y: &[Vec<T>]) -> Vec<Vec<T>> {
    let dim = x.len();
    let flat: Vec<T> = (0..dim * dim)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / dim, idx % dim);
            let mut acc: Option<T> = None;
            for k in 0..dim {
                let (l, r) = (&x[i][k], &y[k][j]);
                if l.is_zero() || r.is_zero() {
                    continue;
                }
                let product = l.mul(r);
                match acc.as_mut() {
                    Some(sum) => sum.add_assign(&product),
                    None => acc = Some(product),
                }
            }
            acc.unwrap_or_else(|| T::positional_zero(&x[0][0], i, j))
        })
        .collect();
    let mut rows = Vec::with_capacity(dim);
    let mut it = flat.into_iter();
    for _ in 0..dim {
        rows.push(it.by_ref().take(dim).collect());
    }
    rows
}

fn bird_determinant<T: DetRing>(a: &[Vec<T>], one: T) -> T {
    let dim = a.len();
    if dim == 0 {
        return one;
    }
    let mut f = a.to_vec();
    for _ in 2..=dim {
        f = mat_mul(&mu_transform(&f), a);
    }
    let mut det = f[0][0].clone();
    if dim % 2 == 0 {
        det.negate();
    }
    det
}

fn add_into<T: DetRing>(slot: &mut Option<T>, value: &T) {
    match slot {
        Some(sum) => sum.add_assign(value),
        None => *slot = Some(value.clone()),
    }
}

/// x times the symmetric Toeplitz matrix y with entry (k, j) = y[|k - j|].
/// The product x[i][k] * y[m] feeds the two output columns k - m and k + m,
/// so it is formed once instead of twice. Per output entry the terms still
/// arrive in ascending k order, hence bit-identical to [`mat_mul`].
fn mat_mul_toeplitz<T: DetRing>(x: &[Vec<T>], y: &[T]) -> Vec<Vec<T>> {
    let dim = x.len();
    (0..dim)
        .into_par_iter()
        .map(|i| {
            let mut acc: Vec<Option<T>> = std::iter::repeat_with(|| None).take(dim).collect();
            for k in 0..dim {
                if x[i][k].is_zero() {
                    continue;
                }
                for m in 0..=k.max(dim - 1 - k) {
                    let left = k.checked_sub(m);
                    let right = Some(k + m).filter(|&j| j < dim && m != 0);
                    if (left.is_none() && right.is_none()) || y[m].is_zero() {
                        continue;
                    }
                    let product = x[i][k].mul(&y[m]);
                    if let Some(j) = left {
                        add_into(&mut acc[j], &product);
                    }
                    if let Some(j) = right {
                        add_into(&mut acc[j], &product);
                    }
                }
            }
            acc.into_iter()
                .enumerate()
                .map(|(j, slot)| slot.unwrap_or_else(|| T::positional_zero(&x[0][0], i, j)))
                .collect()
        })
        .collect()
}

/// Bird's iteration for a symmetric Toeplitz matrix given by its first row,
/// sharing products via [`mat_mul_toeplitz`]. The last step is cut down to
/// the single entry the determinant reads.
fn bird_determinant_toeplitz<T: DetRing>(first_row: &[T], one: T) -> T {
    let dim = first_row.len();
    if dim == 0 {
        return one;
    }
    let a: Vec<Vec<T>> = (0..dim)
        .map(|i| (0..dim).map(|j| first_row[i.abs_diff(j)].clone()).collect())
        .collect();
    let mut f = a.clone();
    for step in 2..=dim {
        let m = mu_transform(&f);
        if step == dim {
            // det = (-1)^(dim-1) times (mu(F) A)[0][0]: row 0 by column 0.
            let mut det: Option<T> = None;
            for (k, entry) in m[0].iter().enumerate() {
                if entry.is_zero() || first_row[k].is_zero() {
                    continue;
                }
                let product = entry.mul(&first_row[k]);
                add_into(&mut det, &product);
            }
            let mut det = det.unwrap_or_else(|| T::positional_zero(&first_row[0], 0, 0));
            if dim % 2 == 0 {
                det.negate();
            }
            return det;
        }
        f = mat_mul_toeplitz(&m, first_row);
    }
    f[0][0].clone()
}

/// Determinant using only ring operations (+, -, x): Bird's iteration of
/// dim - 1 matrix products. The 0 x 0 matrix gives the unit series.
pub fn division_free_det(m: &SeriesMatrix) -> TruncatedSeries {
    bird_determinant(&m.rows(), TruncatedSeries::one(m.cap))
}

/// Determinant by cofactor expansion along the first row. Exponential in
/// the dimension; this is the cross-check the fast path is tested against,
/// not a path anything else should call.
pub fn cofactor_det(m: &SeriesMatrix) -> TruncatedSeries {
    fn expand(rows: &[Vec<TruncatedSeries>], cap: usize) -> TruncatedSeries {
        match rows.len() {
            0 => TruncatedSeries::one(cap),
            1 => rows[0][0].clone(),
            dim => {
                let mut acc = TruncatedSeries::zero(cap);
                for col in 0..dim {
                    let minor: Vec<Vec<TruncatedSeries>> = rows[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != col)
                                .map(|(_, e)| e.clone())
                                .collect()
                        })
                        .collect();
                    let mut term = rows[0][col].convolve(&expand(&minor, cap));
                    if col % 2 == 1 {
                        term.negate_in_place();
                    }
                    acc.add_assign_same_cap(&term);
                }
                acc
            }
        }
    }
    expand(&m.rows(), m.cap)
}

/// The (d-1) x (d-1) matrix with entry (i, j) = bessel_trunc(|i-j|, 2N),
/// whose determinant generates G_d(n) for n up to N.
pub fn gessel_matrix(d: usize, n_terms: usize) -> SeriesMatrix {
    assert!(d >= 1, "d must be at least 1");
    assert!(n_terms >= 1, "need at least one term");
    let cap = 2 * n_terms;
    SeriesMatrix::from_fn(d - 1, cap, |i, j| bessel_trunc(i.abs_diff(j), cap))
        .expect("every entry is built with the shared cap")
}

/// A series storing only the coefficients of one parity class: index k
/// holds the coefficient of t^(2k + parity). Every entry (i, j) of the
/// Bessel matrix is supported on degrees of parity (i + j) mod 2, and
/// Bird's iteration preserves that, so the determinant computation never
/// touches the structurally-zero half of the coefficients. Internal only:
/// the public contract is the full series, and tests compare this path
/// against the dense one.
#[derive(Clone, PartialEq, Eq)]
struct PackedSeries {
    parity: usize,
    cap: usize,
    coeffs: Vec<BigRational>,
}

fn packed_len(cap: usize, parity: usize) -> usize {
    if cap < parity {
        0
    } else {
        (cap - parity) / 2 + 1
    }
}

impl PackedSeries {
    fn zero(cap: usize, parity: usize) -> Self {
        PackedSeries {
            parity,
            cap,
            coeffs: vec![BigRational::zero(); packed_len(cap, parity)],
        }
    }

    fn one(cap: usize) -> Self {
        let mut s = Self::zero(cap, 0);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// bessel_trunc(v, cap) in packed form; term j has degree 2j + v.
    fn bessel(v: usize, cap: usize) -> Self {
        let parity = v % 2;
        let mut s = Self::zero(cap, parity);
        let mut j = 0;
        while 2 * j + v <= cap {
            s.coeffs[j + (v - parity) / 2] =
                BigRational::new(BigInt::one(), factorial(j) * factorial(j + v));
            j += 1;
        }
        s
    }

    /// Coefficient of t^k (zero off-parity; k must not exceed the cap).
    fn coeff_at_degree(&self, k: usize) -> BigRational {
        assert!(k <= self.cap, "coefficient of t^{k} is beyond cap {}", self.cap);
        if k % 2 != self.parity {
            return BigRational::zero();
        }
        self.coeffs[(k - self.parity) / 2].clone()
    }
}

impl DetRing for PackedSeries {
    fn positional_zero(template: &Self, row: usize, col: usize) -> Self {
        PackedSeries::zero(template.cap, (row + col) % 2)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn mul(&self, rhs: &Self) -> Self {
        // Degrees add: (2a + p) + (2b + q) = 2(a + b + (p + q)/2) + (p + q) mod 2.
        let parity = (self.parity + rhs.parity) % 2;
        let shift = (self.parity + rhs.parity) / 2;
        let mut out = PackedSeries::zero(self.cap.min(rhs.cap), parity);
        let len = out.coeffs.len();
        for (a, pa) in self.coeffs.iter().enumerate() {
            if pa.is_zero() || a + shift >= len {
                continue;
            }
            for (b, qb) in rhs.coeffs.iter().take(len - shift - a).enumerate() {
                if !qb.is_zero() {
                    out.coeffs[a + b + shift] += pa * qb;
                }
            }
        }
        out
    }

    fn add_assign(&mut self, rhs: &Self) {
        debug_assert_eq!(self.parity, rhs.parity);
        debug_assert_eq!(self.cap, rhs.cap);
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
    }

    fn negate(&mut self) {
        for c in &mut self.coeffs {
            if !c.is_zero() {
                *c = -std::mem::take(c);
            }
        }
    }
}

/// The first N values G_d(n), n = 1..N: the number of permutations of
/// length n with no increasing subsequence of length d.
///
/// Builds the Bessel matrix truncated at degree 2N, takes its
/// division-free determinant, and returns (n!)^2 times the coefficient of
/// t^(2n); each value is asserted to be an integer and the constant term
/// of the determinant is asserted to be 1.
pub fn gessel_sequence(d: usize, n_terms: usize) -> Vec<BigInt> {
    assert!(d >= 1, "d must be at least 1");
    assert!(n_terms >= 1, "need at least one term");
    let cap = 2 * n_terms;
    let dim = d - 1;
    let first_row: Vec<PackedSeries> =
        (0..dim).map(|v| PackedSeries::bessel(v, cap)).collect();
    let det = bird_determinant_toeplitz(&first_row, PackedSeries::one(cap));
    assert_eq!(det.parity, 0, "internal error: determinant has odd support");
    assert!(
        det.coeff_at_degree(0).is_one(),
        "internal error: determinant constant term is {}, not 1",
        det.coeff_at_degree(0)
    );
    (1..=n_terms)
        .map(|n| {
            let fact = factorial(n);
            let scaled = det.coeff_at_degree(2 * n) * BigRational::from(&fact * &fact);
            assert!(
                scaled.is_integer(),
                "internal error: (n!)^2 [t^{}] det is not an integer at n = {n}, d = {d}",
                2 * n
            );
            scaled.to_integer()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::g_direct;
    use proptest::prelude::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn series(cap: usize, ints: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(
            cap,
            ints.iter().map(|&n| BigRational::from(BigInt::from(n))).collect(),
        )
    }

    #[test]
    fn bessel_examples() {
        let i0 = bessel_trunc(0, 4);
        assert_eq!(i0.coeff(0), ratio(1, 1));
        assert_eq!(i0.coeff(1), ratio(0, 1));
        assert_eq!(i0.coeff(2), ratio(1, 1));
        assert_eq!(i0.coeff(3), ratio(0, 1));
        assert_eq!(i0.coeff(4), ratio(1, 4));

        let i1 = bessel_trunc(1, 3);
        assert_eq!(i1.coeff(0), ratio(0, 1));
        assert_eq!(i1.coeff(1), ratio(1, 1));
        assert_eq!(i1.coeff(2), ratio(0, 1));
        assert_eq!(i1.coeff(3), ratio(1, 2));

        assert!(bessel_trunc(5, 4).is_zero());
    }

    #[test]
    fn bessel_lowest_term_and_parity() {
        for v in 0..=6 {
            let s = bessel_trunc(v, 12);
            for k in 0..v {
                assert!(s.coeff(k).is_zero(), "v={v} k={k}");
            }
            assert_eq!(s.coeff(v), BigRational::new(BigInt::one(), factorial(v)));
            for k in 0..=12 {
                if k % 2 != v % 2 {
                    assert!(s.coeff(k).is_zero(), "off-parity term v={v} k={k}");
                }
            }
        }
    }

    #[test]
    fn series_mul_examples() {
        let p = series(2, &[1, 1]);
        let q = series(2, &[1, -1]);
        assert_eq!(series_mul(&p, &q).unwrap(), series(2, &[1, 0, -1]));

        let p = series(2, &[1, 1, 1]);
        let q = series(2, &[1, 1]);
        assert_eq!(series_mul(&p, &q).unwrap(), series(2, &[1, 2, 2]));
    }

    #[test]
    fn series_mul_rejects_cap_mismatch() {
        let err = series_mul(&TruncatedSeries::one(3), &TruncatedSeries::one(4)).unwrap_err();
        assert!(matches!(err, Error::CapMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn display_forms() {
        assert_eq!(bessel_trunc(0, 4).to_string(), "1 + t^2 + 1/4*t^4");
        assert_eq!(bessel_trunc(1, 3).to_string(), "t + 1/2*t^3");
        assert_eq!(TruncatedSeries::zero(5).to_string(), "0");
        assert_eq!(series(3, &[0, -2]).to_string(), "-2*t");
    }

    fn arb_series(cap: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec((-20i64..20, 1i64..8), 0..=cap + 1).prop_map(move |pairs| {
            TruncatedSeries::from_coeffs(
                cap,
                pairs.into_iter().map(|(n, d)| ratio(n, d)).collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mul_matches_schoolbook_convolution(p in arb_series(8), q in arb_series(8)) {
            // Independent oracle: full product, then truncate.
            let mut full = vec![BigRational::zero(); 17];
            for a in 0..=8 {
                for b in 0..=8 {
                    full[a + b] += p.coeff(a) * q.coeff(b);
                }
            }
            let product = series_mul(&p, &q).unwrap();
            for k in 0..=8 {
                prop_assert_eq!(product.coeff(k), full[k].clone());
            }
        }

        #[test]
        fn mul_commutative_associative_unital(
            p in arb_series(10),
            q in arb_series(10),
            s in arb_series(10),
        ) {
            prop_assert_eq!(series_mul(&p, &q).unwrap(), series_mul(&q, &p).unwrap());
            let left = series_mul(&series_mul(&p, &q).unwrap(), &s).unwrap();
            let right = series_mul(&p, &series_mul(&q, &s).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let unit = TruncatedSeries::one(10);
            prop_assert_eq!(series_mul(&p, &unit).unwrap(), p);
        }
    }

    #[test]
    fn determinant_of_tiny_matrices() {
        let cap = 3;
        let s = series(cap, &[2, 1, 0, 5]);
        let m = SeriesMatrix::new(1, cap, vec![s.clone()]).unwrap();
        assert_eq!(division_free_det(&m), s);

        let a = series(cap, &[1, 1]);
        let b = series(cap, &[0, 2]);
        let c = series(cap, &[3]);
        let d = series(cap, &[1, 0, 1]);
        let m = SeriesMatrix::new(2, cap, vec![a.clone(), b.clone(), c.clone(), d.clone()]).unwrap();
        let expected = {
            let mut ad = a.convolve(&d);
            let mut bc = b.convolve(&c);
            bc.negate_in_place();
            ad.add_assign_same_cap(&bc);
            ad
        };
        assert_eq!(division_free_det(&m), expected);
    }

    #[test]
    fn determinant_of_empty_matrix_is_one() {
        let m = SeriesMatrix::new(0, 4, Vec::new()).unwrap();
        assert_eq!(division_free_det(&m), TruncatedSeries::one(4));
        assert_eq!(cofactor_det(&m), TruncatedSeries::one(4));
    }

    #[test]
    fn determinant_matches_integer_oracle() {
        // Independent integer determinant by cofactor expansion.
        fn int_det(m: &[Vec<i64>]) -> i64 {
            match m.len() {
                0 => 1,
                1 => m[0][0],
                dim => (0..dim)
                    .map(|col| {
                        let minor: Vec<Vec<i64>> = m[1..]
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .enumerate()
                                    .filter(|&(c, _)| c != col)
                                    .map(|(_, &e)| e)
                                    .collect()
                            })
                            .collect();
                        let sign = if col % 2 == 0 { 1 } else { -1 };
                        sign * m[0][col] * int_det(&minor)
                    })
                    .sum(),
            }
        }

        let ints = vec![
            vec![2, 0, 1, 3],
            vec![1, 1, 0, 2],
            vec![0, 2, 1, 1],
            vec![3, 1, 2, 0],
        ];
        let m = SeriesMatrix::from_fn(4, 2, |i, j| series(2, &[ints[i][j]])).unwrap();
        let det = division_free_det(&m);
        assert_eq!(det.coeff(0), BigRational::from(BigInt::from(int_det(&ints))));
        assert!(det.coeff(1).is_zero());
        assert!(det.coeff(2).is_zero());
    }

    #[test]
    fn matrix_constructor_rejects_mixed_caps() {
        let err = SeriesMatrix::new(
            1,
            4,
            vec![TruncatedSeries::one(3)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::CapMismatch { left: 4, right: 3 }));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn division_free_matches_cofactor(
            dim in 2usize..=4,
            seed in proptest::collection::vec((-6i64..6, 1i64..4), 16),
        ) {
            let cap = 6;
            let m = SeriesMatrix::from_fn(dim, cap, |i, j| {
                let (n, d) = seed[i * 4 + j];
                // A two-term series keeps the cross-check nontrivial in t.
                TruncatedSeries::from_coeffs(cap, vec![ratio(n, d), ratio(d, 1)])
            })
            .unwrap();
            prop_assert_eq!(division_free_det(&m), cofactor_det(&m));
        }
    }

    #[test]
    fn gessel_examples() {
        assert_eq!(gessel_sequence(1, 3), vec![BigInt::zero(); 3]);
        assert_eq!(gessel_sequence(2, 5), vec![BigInt::one(); 5]);
        let catalan: Vec<BigInt> = [1u32, 2, 5, 14, 42, 132].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(gessel_sequence(3, 6), catalan);
    }

    #[test]
    fn gessel_trivial_prefix_is_factorial() {
        for d in 1..=10 {
            let terms = gessel_sequence(d, d + 2);
            for n in 1..d {
                assert_eq!(terms[n - 1], factorial(n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn gessel_matches_direct_sums() {
        for d in 2..=6 {
            let terms = gessel_sequence(d, 8);
            for n in 1..=8 {
                assert_eq!(terms[n - 1], g_direct(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn dense_determinant_is_even_with_unit_constant_term() {
        for d in 2..=6 {
            let det = division_free_det(&gessel_matrix(d, 5));
            assert!(det.coeff(0).is_one(), "d={d}");
            for k in (1..=det.cap()).step_by(2) {
                assert!(det.coeff(k).is_zero(), "odd coefficient t^{k} at d={d}");
            }
        }
    }

    #[test]
    fn toeplitz_and_generic_iterations_agree() {
        for d in 2..=6 {
            let cap = 8;
            let generic = division_free_det(&gessel_matrix(d, 4));
            let first_row: Vec<TruncatedSeries> =
                (0..d - 1).map(|v| bessel_trunc(v, cap)).collect();
            let toeplitz = bird_determinant_toeplitz(&first_row, TruncatedSeries::one(cap));
            assert_eq!(generic, toeplitz, "d={d}");
        }
    }

    #[test]
    fn packed_and_dense_paths_agree() {
        for d in 2..=5 {
            let n_terms = 8;
            let det = division_free_det(&gessel_matrix(d, n_terms));
            let dense: Vec<BigInt> = (1..=n_terms)
                .map(|n| {
                    let fact = factorial(n);
                    let scaled = det.coeff(2 * n) * BigRational::from(&fact * &fact);
                    assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect();
            assert_eq!(dense, gessel_sequence(d, n_terms), "d={d}");
        }
    }
}
