//! Parsing of arbitrary-size nonnegative integer literals, with `a^b`
//! sugar so a googol is spelled `10^100` rather than 101 characters.

use anyhow::{bail, Context, Result};
use num_bigint::BigInt;
use num_traits::Signed;

/// Largest accepted exponent in the `a^b` form; beyond this the expanded
/// integer alone would be tens of megabytes.
const EXPONENT_LIMIT: u32 = 1_000_000;

pub fn parse_big_literal(input: &str) -> Result<BigInt> {
    let value = match input.split_once('^') {
        Some((base, exponent)) => {
            let base: BigInt = base
                .trim()
                .parse()
                .with_context(|| format!("invalid base in {input:?}"))?;
            if base.is_negative() {
                bail!("expected a nonnegative integer, got base {base}");
            }
            let exponent: u32 = exponent
                .trim()
                .parse()
                .with_context(|| format!("invalid exponent in {input:?}"))?;
            if exponent > EXPONENT_LIMIT {
                bail!("exponent {exponent} is too large (limit {EXPONENT_LIMIT})");
            }
            base.pow(exponent)
        }
        None => input
            .trim()
            .parse()
            .with_context(|| format!("invalid integer literal {input:?}"))?,
    };
    if value.is_negative() {
        bail!("expected a nonnegative integer, got {value}");
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn plain_and_sugar_forms() {
        assert_eq!(parse_big_literal("42").unwrap(), BigInt::from(42));
        assert_eq!(parse_big_literal(" 0 ").unwrap(), BigInt::from(0));
        assert_eq!(parse_big_literal("2^10").unwrap(), BigInt::from(1024));
        assert_eq!(
            parse_big_literal("10^100").unwrap(),
            BigInt::from(10u32).pow(100)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_big_literal("-3").is_err());
        assert!(parse_big_literal("-2^4").is_err());
        assert!(parse_big_literal("ten").is_err());
        assert!(parse_big_literal("10^").is_err());
        assert!(parse_big_literal("10^10^10").is_err());
        assert!(parse_big_literal("2^2000000").is_err());
    }
}
