//! Polynomial counts for a symbolic alphabet size.
//!
//! For a fixed offset r, every diagram with d + r cells and at least d rows
//! is (1 + mu_1, ..., 1 + mu_r, 1^(d - r + r')) for some diagram mu with at
//! most r cells, r' = r - |mu|. The hook product of such a shape factors
//! into the hook product of mu, a run of linear factors in d, and a
//! factorial, so its tableau count is a polynomial in d ([`f_poly`]).
//! Summing the squares over all mu gives [`b_poly`], the polynomial in d
//! for the number of permutations of length d + r containing an increasing
//! subsequence of length d, valid for d >= r - 1.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{factorial, partitions_up_to, Partition};

/// Largest d + r for which [`g_count`] will materialize the factorial.
pub const FACTORIAL_LIMIT: usize = 10_000;

/// A dense univariate polynomial in the symbol d with exact rational
/// coefficients, stored in ascending degree order.
///
/// Canonical form: the coefficient vector never ends in a zero; the zero
/// polynomial is the empty vector. Coefficients are kept in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn zero() -> Self {
        RatPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPolynomial {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// From coefficients in ascending degree order; trailing zeros are
    /// stripped to keep the canonical form.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPolynomial { coeffs };
        while p.coeffs.last().map_or(false, Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of d^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<BigRational> {
        self.coeffs.last().cloned()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact value at an integer point, by Horner's scheme.
    pub fn evaluate(&self, d: &BigInt) -> BigRational {
        let point = BigRational::from(d.clone());
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &point + c;
        }
        acc
    }

    /// Exact value at an integer point, as the term-by-term sum of
    /// coefficient times power. Algebraically identical to
    /// [`Self::evaluate`] but takes a different route through the
    /// arithmetic; the pair serves as a self-check for huge arguments.
    pub fn evaluate_by_powers(&self, d: &BigInt) -> BigRational {
        let mut acc = BigRational::zero();
        let mut power = BigInt::one();
        for c in &self.coeffs {
            acc += c * &power;
            power *= d;
        }
        acc
    }
}

impl Add for &RatPolynomial {
    type Output = RatPolynomial;

    fn add(self, rhs: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        RatPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &RatPolynomial {
    type Output = RatPolynomial;

    fn sub(self, rhs: &RatPolynomial) -> RatPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        RatPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &RatPolynomial {
    type Output = RatPolynomial;

    fn mul(self, rhs: &RatPolynomial) -> RatPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RatPolynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        RatPolynomial::from_coeffs(coeffs)
    }
}

impl std::fmt::Debug for RatPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RatPolynomial({self})")
    }
}

/// Renders in descending powers with exact fractions, e.g.
/// `1/2*d^4 + d^3 + 1/2*d^2 + d + 3`.
impl std::fmt::Display for RatPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = c.abs();
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                if k == 1 {
                    write!(f, "d")?;
                } else {
                    write!(f, "d^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// The shape (1 + mu_1, ..., 1 + mu_r, 1^(d - r + r')) for symbolic d:
/// a diagram mu with at most r cells together with the offset r and the
/// derived column surplus r' = r - |mu|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeDecomposition {
    mu: Partition,
    r: usize,
    rprime: usize,
}

impl ShapeDecomposition {
    /// Panics if |mu| exceeds r.
    pub fn new(mu: Partition, r: usize) -> Self {
        assert!(
            mu.size() <= r,
            "shape decomposition requires |mu| <= r (got |mu| = {}, r = {})",
            mu.size(),
            r
        );
        let rprime = r - mu.size();
        ShapeDecomposition { mu, r, rprime }
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rprime(&self) -> usize {
        self.rprime
    }

    /// The concrete diagram this decomposition denotes at a numeric d.
    /// Requires d >= |mu| so the trailing column is well defined.
    pub fn concrete_shape(&self, d: usize) -> Partition {
        assert!(d + self.rprime >= self.r, "shape degenerate at d = {d}");
        let mut parts: Vec<usize> = Vec::with_capacity(d + self.rprime);
        for i in 0..self.r {
            parts.push(1 + self.mu.parts().get(i).copied().unwrap_or(0));
        }
        parts.extend(std::iter::repeat(1).take(d + self.rprime - self.r));
        Partition::new(parts).expect("decomposition parts are weakly decreasing")
    }
}

/// Integer-coefficient core of [`f_poly`]: the product of the surviving
/// linear factors, plus the hook product of mu by which it must be divided.
fn f_poly_scaled(dec: &ShapeDecomposition) -> (Vec<BigInt>, BigInt) {
    let r = dec.r as i64;
    let rp = dec.rprime as i64;
    // The falling factorial (d+r)(d+r-1)...(d-r+r'+1) as a factor list;
    // the factor with constant term c sits at index r - c.
    let factor_count = (2 * r - rp) as usize;
    let mut removed = vec![false; factor_count];
    for i in 1..=r {
        let mu_i = dec.mu.parts().get(i as usize - 1).copied().unwrap_or(0) as i64;
        let constant = rp + mu_i - i + 1;
        let index = r - constant;
        assert!(
            index >= 0 && (index as usize) < factor_count && !removed[index as usize],
            "internal error: factor d + {constant} not available in the falling factorial \
             (mu = {}, r = {r})",
            dec.mu
        );
        removed[index as usize] = true;
    }
    let mut coeffs = vec![BigInt::one()];
    for (index, gone) in removed.iter().enumerate() {
        if !gone {
            let constant = r - index as i64;
            coeffs = mul_by_linear(coeffs, constant);
        }
    }
    debug_assert_eq!(coeffs.len(), dec.mu.size() + 1);
    (coeffs, dec.mu.hook_product())
}

/// Multiplies an integer polynomial by (d + c).
fn mul_by_linear(coeffs: Vec<BigInt>, c: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); coeffs.len() + 1];
    for (k, a) in coeffs.into_iter().enumerate() {
        out[k] += &a * c;
        out[k + 1] += a;
    }
    out
}

/// The tableau count of the shape (1 + mu_1, ..., 1 + mu_r, 1^(d - r + r'))
/// as a polynomial in d.
///
/// Built by listing the 2r - r' linear factors of the falling factorial
/// (d+r)!/(d-r+r')!, cancelling the r factors (d + r' + mu_i - i + 1)
/// exactly (each occurs exactly once; asserted), and dividing the surviving
/// product by the hook product of mu. The degree is |mu| and the leading
/// coefficient is f_mu / |mu|!.
pub fn f_poly(dec: &ShapeDecomposition) -> RatPolynomial {
    let (coeffs, hook) = f_poly_scaled(dec);
    RatPolynomial::from_coeffs(
        coeffs
            .into_iter()
            .map(|c| BigRational::new(c, hook.clone()))
            .collect(),
    )
}

/// The polynomial in d for B_d(d + r): the sum of f_poly(mu, r)^2 over all
/// diagrams mu with at most r cells. Degree 2r, leading coefficient 1/r!;
/// agrees with [`crate::partitions::b_direct`] for every integer d >= r - 1.
///
/// Results are memoized in-process; construction, not evaluation, is the
/// expensive part for large r.
pub fn b_poly(r: usize) -> RatPolynomial {
    static CACHE: OnceLock<Mutex<HashMap<usize, RatPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = cache.lock().unwrap().get(&r) {
        return found.clone();
    }
    let poly = build_b_poly(r);
    cache.lock().unwrap().insert(r, poly.clone());
    poly
}

fn build_b_poly(r: usize) -> RatPolynomial {
    let mut acc = vec![BigRational::zero(); 2 * r + 1];
    for mu in partitions_up_to(r) {
        let dec = ShapeDecomposition::new(mu, r);
        let (coeffs, hook) = f_poly_scaled(&dec);
        // Square over the integers, then divide by hook^2 once.
        let mut square = vec![BigInt::zero(); 2 * coeffs.len() - 1];
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in coeffs.iter().enumerate() {
                if !b.is_zero() {
                    square[i + j] += a * b;
                }
            }
        }
        let hook_sq = &hook * &hook;
        for (k, c) in square.into_iter().enumerate() {
            if !c.is_zero() {
                acc[k] += BigRational::new(c, hook_sq.clone());
            }
        }
    }
    let poly = RatPolynomial::from_coeffs(acc);
    assert_eq!(poly.degree(), Some(2 * r), "internal error: b_poly degree");
    assert_eq!(
        poly.leading_coeff().unwrap(),
        BigRational::new(BigInt::one(), factorial(r)),
        "internal error: b_poly leading coefficient"
    );
    poly
}

/// A count left in the form (d + r)! minus an explicit integer, for
/// arguments whose factorial cannot (or should not) be spelled out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCount {
    /// Argument of the factorial, i.e. d + r.
    pub factorial_arg: BigInt,
    /// The exact number of permutations of length d + r that contain an
    /// increasing subsequence of length d.
    pub containers: BigInt,
}

/// Least d for which the polynomial for offset r counts permutations:
/// max(1, r - 1). Below it the polynomial still evaluates but the value
/// is not a count.
pub fn validity_bound(r: usize) -> BigInt {
    BigInt::from(1.max(r as i64 - 1))
}

fn check_validity(d: &BigInt, r: usize) -> Result<()> {
    let bound = validity_bound(r);
    if d < &bound {
        return Err(Error::OutsideValidityDomain {
            d: d.to_string(),
            bound: bound.to_string(),
            r,
        });
    }
    Ok(())
}

fn containers_at(d: &BigInt, r: usize) -> BigInt {
    let value = b_poly(r).evaluate(d);
    assert!(
        value.is_integer(),
        "internal error: b_poly({r}) at d = {d} is not an integer"
    );
    value.to_integer()
}

/// G_d(d + r) = (d + r)! - b_poly(r)(d), with the factorial materialized.
///
/// Valid for d >= max(1, r - 1); refuses d + r beyond [`FACTORIAL_LIMIT`]
/// (use [`g_count_symbolic`] for the astronomically large regime).
pub fn g_count(d: &BigInt, r: usize) -> Result<BigInt> {
    check_validity(d, r)?;
    let arg = d + BigInt::from(r);
    if arg > BigInt::from(FACTORIAL_LIMIT) {
        return Err(Error::FactorialTooLarge { arg: arg.to_string() });
    }
    let n: usize = arg.try_into().expect("bounded by FACTORIAL_LIMIT");
    let avoiders = factorial(n) - containers_at(d, r);
    assert!(
        !avoiders.is_negative(),
        "internal error: negative avoider count at d = {d}, r = {r}"
    );
    Ok(avoiders)
}

/// G_d(d + r) with the factorial left symbolic: the pair of the factorial
/// argument d + r and the exact integer b_poly(r)(d) to subtract from it.
pub fn g_count_symbolic(d: &BigInt, r: usize) -> Result<SymbolicCount> {
    check_validity(d, r)?;
    Ok(SymbolicCount {
        factorial_arg: d + BigInt::from(r),
        containers: containers_at(d, r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::b_direct;
    use proptest::prelude::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn poly(coeffs: &[(i64, i64)]) -> RatPolynomial {
        RatPolynomial::from_coeffs(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    fn shape(mu: &[usize], r: usize) -> ShapeDecomposition {
        ShapeDecomposition::new(Partition::new(mu.to_vec()).unwrap(), r)
    }

    #[test]
    fn f_poly_examples() {
        assert_eq!(f_poly(&shape(&[], 0)), RatPolynomial::one());
        assert_eq!(f_poly(&shape(&[1], 1)), poly(&[(0, 1), (1, 1)]));
        assert_eq!(f_poly(&shape(&[], 1)), RatPolynomial::one());
    }

    #[test]
    fn f_poly_matches_concrete_tableau_counts() {
        for r in 0..=5 {
            for mu in partitions_up_to(r) {
                let dec = ShapeDecomposition::new(mu, r);
                let p = f_poly(&dec);
                assert_eq!(p.degree().unwrap_or(0), dec.mu().size());
                for d in r.max(1)..r + 4 {
                    let concrete = dec.concrete_shape(d);
                    assert_eq!(concrete.size(), d + r);
                    let expected = BigRational::from(concrete.count_syt());
                    assert_eq!(
                        p.evaluate(&BigInt::from(d)),
                        expected,
                        "mu = {}, r = {r}, d = {d}",
                        dec.mu()
                    );
                }
            }
        }
    }

    #[test]
    fn b_poly_matches_printed_low_offsets() {
        assert_eq!(b_poly(0), RatPolynomial::one());
        assert_eq!(b_poly(1), poly(&[(1, 1), (0, 1), (1, 1)]));
        assert_eq!(
            b_poly(2),
            poly(&[(3, 1), (1, 1), (1, 2), (1, 1), (1, 2)])
        );
        assert_eq!(
            b_poly(3),
            poly(&[
                (11, 1),
                (31, 3),
                (19, 6),
                (2, 3),
                (5, 3),
                (1, 1),
                (1, 6)
            ])
        );
    }

    #[test]
    fn b_poly_degree_and_leading_coefficient() {
        for r in 0..=8 {
            let p = b_poly(r);
            assert_eq!(p.degree(), Some(2 * r));
            assert_eq!(
                p.leading_coeff().unwrap(),
                BigRational::new(BigInt::one(), factorial(r))
            );
        }
    }

    #[test]
    fn b_poly_agrees_with_direct_sum_down_to_the_boundary() {
        for r in 0..=6 {
            let p = b_poly(r);
            let low = 1.max(r as i64 - 1) as usize;
            for d in low..=r + 4 {
                let value = p.evaluate(&BigInt::from(d));
                assert!(value.is_integer());
                assert_eq!(value.to_integer(), b_direct(d, d + r), "r={r} d={d}");
            }
        }
    }

    #[test]
    fn b_poly_values_are_nonnegative_integers_in_domain() {
        for r in 0..=6 {
            let p = b_poly(r);
            let low = 1.max(r as i64 - 1) as usize;
            for d in low..=12 {
                let value = p.evaluate(&BigInt::from(d));
                assert!(value.is_integer(), "r={r} d={d}");
                assert!(!value.to_integer().is_negative(), "r={r} d={d}");
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let square_plus_one = poly(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(
            square_plus_one.evaluate(&BigInt::from(3)),
            BigRational::from(BigInt::from(10))
        );
        let googol = BigInt::from(10u32).pow(100);
        assert_eq!(RatPolynomial::zero().evaluate(&googol), BigRational::zero());
        assert_eq!(
            b_poly(2).evaluate(&BigInt::from(2)),
            BigRational::from(b_direct(2, 4))
        );
    }

    #[test]
    fn g_count_examples() {
        assert_eq!(g_count(&BigInt::from(3), 1).unwrap(), BigInt::from(14));
        assert_eq!(g_count(&BigInt::from(5), 0).unwrap(), BigInt::from(119));
        assert_eq!(g_count(&BigInt::from(2), 2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn validity_bound_examples() {
        for r in 0..=2 {
            assert_eq!(validity_bound(r), BigInt::one());
        }
        assert_eq!(validity_bound(3), BigInt::from(2));
        assert_eq!(validity_bound(30), BigInt::from(29));
    }

    #[test]
    fn g_count_refuses_below_validity_bound() {
        let err = g_count(&BigInt::from(1), 3).unwrap_err();
        assert!(matches!(err, Error::OutsideValidityDomain { .. }));
        let err = g_count_symbolic(&BigInt::from(0), 0).unwrap_err();
        assert!(matches!(err, Error::OutsideValidityDomain { .. }));
    }

    #[test]
    fn g_count_refuses_huge_factorials() {
        let googol = BigInt::from(10u32).pow(100);
        assert!(matches!(
            g_count(&googol, 0).unwrap_err(),
            Error::FactorialTooLarge { .. }
        ));
        // The symbolic form handles the same argument.
        let sym = g_count_symbolic(&googol, 0).unwrap();
        assert_eq!(sym.containers, BigInt::one());
        assert_eq!(sym.factorial_arg, googol);
    }

    #[test]
    fn g_count_symbolic_examples() {
        let sym = g_count_symbolic(&BigInt::from(5), 0).unwrap();
        assert_eq!(sym.factorial_arg, BigInt::from(5));
        assert_eq!(sym.containers, BigInt::from(1));
        let sym = g_count_symbolic(&BigInt::from(3), 1).unwrap();
        assert_eq!(sym.factorial_arg, BigInt::from(4));
        assert_eq!(sym.containers, BigInt::from(10));
    }

    #[test]
    fn googol_squared_plus_one() {
        let googol = BigInt::from(10u32).pow(100);
        let sym = g_count_symbolic(&googol, 1).unwrap();
        assert_eq!(
            sym.containers,
            BigInt::from(10u32).pow(200) + BigInt::one()
        );
    }

    #[test]
    fn display_matches_printed_forms() {
        assert_eq!(b_poly(0).to_string(), "1");
        assert_eq!(b_poly(1).to_string(), "d^2 + 1");
        assert_eq!(b_poly(2).to_string(), "1/2*d^4 + d^3 + 1/2*d^2 + d + 3");
        assert_eq!(RatPolynomial::zero().to_string(), "0");
        assert_eq!(poly(&[(0, 1), (-1, 2)]).to_string(), "-1/2*d");
        assert_eq!(poly(&[(-3, 1), (1, 1)]).to_string(), "d - 3");
    }

    fn arb_poly() -> impl Strategy<Value = RatPolynomial> {
        proptest::collection::vec((-50i64..50, 1i64..20), 0..=11)
            .prop_map(|pairs| {
                RatPolynomial::from_coeffs(
                    pairs.into_iter().map(|(n, d)| ratio(n, d)).collect(),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evaluation_is_a_ring_homomorphism(
            p in arb_poly(),
            q in arb_poly(),
            x in -1_000_000_000_000i64..1_000_000_000_000i64,
        ) {
            let point = BigInt::from(x);
            let sum = &p + &q;
            let product = &p * &q;
            prop_assert_eq!(sum.evaluate(&point), p.evaluate(&point) + q.evaluate(&point));
            prop_assert_eq!(product.evaluate(&point), p.evaluate(&point) * q.evaluate(&point));
        }

        #[test]
        fn horner_and_power_sum_agree(p in arb_poly(), x in -100_000i64..100_000i64) {
            let point = BigInt::from(x);
            prop_assert_eq!(p.evaluate(&point), p.evaluate_by_powers(&point));
        }
    }
}
