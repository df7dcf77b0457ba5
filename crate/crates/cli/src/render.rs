//! Rendering of polynomials and term lists in the three output formats,
//! and the single place output leaves the process. Every count is printed
//! in full decimal; nothing is ever rounded or abbreviated.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use liscount::RatPolynomial;

#[derive(Copy, Clone, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Plain,
    /// The JSON record schemas, one object per logical record.
    Json,
    /// Display-style markup for polynomials and term lists.
    Latex,
}

/// Writes the rendered text (with a trailing newline) to the file given
/// by --out, or to stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let mut content = text.to_string();
            content.push('\n');
            std::fs::write(path, content)
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            writeln!(handle, "{text}").context("writing to stdout")?;
        }
    }
    Ok(())
}

pub fn terms_plain(terms: &[BigInt]) -> String {
    terms
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn terms_latex(terms: &[BigInt]) -> String {
    let body = terms
        .iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    format!("\\[{body}\\]")
}

/// Descending powers in display style, e.g.
/// `\frac{1}{2}\,d^{4}+d^{3}+\frac{1}{2}\,d^{2}+d+3`.
pub fn polynomial_latex(poly: &RatPolynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let coeffs = poly.coeffs();
    for k in (0..coeffs.len()).rev() {
        let c = &coeffs[k];
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() && c.is_positive() {
            out.push('+');
        }
        if c.is_negative() {
            out.push('-');
        }
        let magnitude = c.abs();
        let unit = magnitude.is_one();
        if !unit || k == 0 {
            out.push_str(&latex_rational(&magnitude));
        }
        if k > 0 {
            if !unit {
                out.push_str("\\,");
            }
            if k == 1 {
                out.push('d');
            } else {
                out.push_str(&format!("d^{{{k}}}"));
            }
        }
    }
    out
}

fn latex_rational(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", value.numer(), value.denom())
    }
}
