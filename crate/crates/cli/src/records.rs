//! The two on-disk / on-wire record shapes. Field order is fixed by the
//! struct declarations and serde preserves it, so emitted JSON is stable
//! enough to diff and to hash.

use std::str::FromStr;

use anyhow::{Context, Result};
use chrono::{SecondsFormat, Utc};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use liscount::RatPolynomial;

#[derive(Copy, Clone, PartialEq, Eq, Debug, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Truncated-series determinant; the only method that scales.
    Det,
    /// Sums of squared tableau counts over diagrams.
    Direct,
    /// Enumeration of all n! permutations.
    Brute,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Det => "det",
            Method::Direct => "direct",
            Method::Brute => "brute",
        })
    }
}

/// A computed run of avoider counts G_d(1..N), stamped with the method,
/// time, and tool version that produced it.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub d: usize,
    pub method: Method,
    /// Full decimal strings; the values outgrow every native JSON number.
    pub terms: Vec<String>,
    pub generated_at: String,
    pub tool_version: String,
}

impl SequenceRecord {
    pub fn new(d: usize, method: Method, terms: &[BigInt]) -> Self {
        SequenceRecord {
            d,
            method,
            terms: terms.iter().map(BigInt::to_string).collect(),
            generated_at: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn parsed_terms(&self) -> Result<Vec<BigInt>> {
        self.terms
            .iter()
            .map(|t| BigInt::from_str(t).with_context(|| format!("bad stored term {t:?}")))
            .collect()
    }

    /// The same record cut down to its first n terms.
    pub fn truncated(&self, n: usize) -> Self {
        let mut rec = self.clone();
        rec.terms.truncate(n);
        rec
    }
}

/// One row of the `table` command: G_d(n) for n = from..(from + len - 1).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TableRow {
    pub d: usize,
    pub from: usize,
    pub terms: Vec<String>,
}

/// The `bigeval` result: the exact containment count at a huge d.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BigevalRecord {
    pub r: usize,
    pub d: String,
    pub containers: String,
    pub digits: usize,
    /// Argument of the factorial in the avoider count (d + r)! minus
    /// containers; present only when the symbolic form was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorial_arg: Option<String>,
}

/// The polynomial in d counting permutations of length d + r that contain
/// an increasing subsequence of length d.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub r: usize,
    /// Exact rationals as "numerator/denominator" (or plain integer)
    /// strings, ascending powers of d; always 2r + 1 entries.
    pub coeffs: Vec<String>,
}

impl PolynomialRecord {
    pub fn from_poly(r: usize, poly: &RatPolynomial) -> Self {
        PolynomialRecord {
            r,
            coeffs: poly.coeffs().iter().map(BigRational::to_string).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<RatPolynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_str(c).with_context(|| format!("bad coefficient {c:?}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatPolynomial::from_coeffs(coeffs))
    }
}
