//! `liscount`: exact counts of permutations by longest increasing
//! subsequence, from the command line. Five subcommands: `bpoly` prints
//! the closed-form polynomial for a fixed offset, `gseq` prints sequence
//! terms by any of three independent methods, `table` prints the direct
//! triangle, `bigeval` evaluates at astronomically large sizes, and
//! `verify` cross-checks everything (including the cache) and reports.

mod biglit;
mod cache;
mod records;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use liscount::{b_poly, count_by_lis_brute, g_direct, gessel_sequence, validity_bound, RatPolynomial};

use cache::Cache;
use records::{BigevalRecord, Method, PolynomialRecord, SequenceRecord, TableRow};
use render::Format;

/// The polynomial table is documented up to this offset; larger ones are
/// computed anyway, after a resource warning.
const SOFT_OFFSET_CEILING: usize = 30;

/// Term ceiling for the direct (diagram-sum) method; beyond this the
/// partition enumeration per term stops being interactive.
const DIRECT_TERM_LIMIT: usize = 50;

#[derive(Parser)]
#[command(
    name = "liscount",
    version,
    about = "Exact counts of permutations avoiding or containing an increasing subsequence of a given length"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Disable reading and writing the on-disk cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads for internal parallelism (0 = one per core).
    #[arg(long, global = true, value_name = "K", default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomial in d counting permutations of length d+R that contain an
    /// increasing subsequence of length d (valid for d >= R-1)
    Bpoly {
        /// Offset r = n - d; the polynomial has degree 2r
        r: usize,
    },
    /// First N terms of G_D: permutations of length n = 1..N with no
    /// increasing subsequence of length D
    Gseq {
        d: usize,
        n: usize,
        /// Computation route
        #[arg(long, value_enum, default_value_t = Method::Det)]
        method: Method,
    },
    /// Avoider counts G_d(n) for d = 1..DMAX and n = d..NMAX, one row per d
    Table { dmax: usize, nmax: usize },
    /// Exact count of length d+R permutations containing an increasing
    /// subsequence of length d, for huge d
    Bigeval {
        /// Offset r = n - d
        r: usize,
        /// Value of d: plain digits or base^exponent sugar, e.g. 10^100
        d: String,
        /// Also print the avoider count as (d+r)! minus the result
        #[arg(long)]
        symbolic: bool,
    },
    /// Cross-check all computation routes against each other and validate
    /// the cache; nonzero exit on any mismatch
    Verify {
        /// Largest subsequence-length threshold d exercised
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        /// Largest permutation length n exercised
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Largest polynomial offset r exercised
        #[arg(long, default_value_t = 6)]
        rmax: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .context("initializing the thread pool")?;
    }
    let cache = if cli.no_cache { None } else { Cache::resolve() };
    let cache = cache.as_ref();

    let (text, ok) = match cli.command {
        Command::Bpoly { r } => (cmd_bpoly(r, cli.format, cache)?, true),
        Command::Gseq { d, n, method } => (cmd_gseq(d, n, method, cli.format, cache)?, true),
        Command::Table { dmax, nmax } => (cmd_table(dmax, nmax, cli.format)?, true),
        Command::Bigeval { r, d, symbolic } => {
            (cmd_bigeval(r, &d, symbolic, cli.format, cache)?, true)
        }
        Command::Verify { dmax, nmax, rmax } => {
            let report = verify::run_suite(dmax, nmax, rmax, cache);
            let text = match cli.format {
                Format::Json => serde_json::to_string(&report)?,
                Format::Plain | Format::Latex => report.render_plain(),
            };
            (text, report.passed)
        }
    };
    render::emit(&text, cli.out.as_deref())?;
    Ok(ok)
}

/// b_poly(r) through the disk cache when one is configured. A cache write
/// failure degrades to a warning; the cache is an accelerator, never a
/// requirement.
fn cached_b_poly(r: usize, cache: Option<&Cache>) -> Result<RatPolynomial> {
    if let Some(cache) = cache {
        if let Some(record) = cache.load_polynomial(r) {
            if record.r == r {
                if let Ok(poly) = record.to_poly() {
                    return Ok(poly);
                }
            }
        }
    }
    let poly = b_poly(r);
    if let Some(cache) = cache {
        if let Err(e) = cache.store_polynomial(&PolynomialRecord::from_poly(r, &poly)) {
            eprintln!("warning: could not write the cache: {e:#}");
        }
    }
    Ok(poly)
}

fn warn_beyond_table(r: usize) {
    if r > SOFT_OFFSET_CEILING {
        eprintln!(
            "warning: offset {r} is beyond the documented table (0..{SOFT_OFFSET_CEILING}); \
             this may take a while"
        );
    }
}

fn cmd_bpoly(r: usize, format: Format, cache: Option<&Cache>) -> Result<String> {
    warn_beyond_table(r);
    let poly = cached_b_poly(r, cache)?;
    Ok(match format {
        Format::Plain => poly.to_string(),
        Format::Json => serde_json::to_string(&PolynomialRecord::from_poly(r, &poly))?,
        Format::Latex => render::polynomial_latex(&poly),
    })
}

/// The det route through the disk cache: a stored run for this d with at
/// least n terms is sliced; otherwise n terms are computed and stored as
/// the new longest-known run.
fn det_record(d: usize, n: usize, cache: Option<&Cache>) -> Result<SequenceRecord> {
    if let Some(cache) = cache {
        if let Some(record) = cache.load_sequence(d) {
            if record.d == d && record.terms.len() >= n && record.parsed_terms().is_ok() {
                return Ok(record.truncated(n));
            }
        }
    }
    let terms = gessel_sequence(d, n);
    let record = SequenceRecord::new(d, Method::Det, &terms);
    if let Some(cache) = cache {
        if let Err(e) = cache.store_sequence(&record) {
            eprintln!("warning: could not write the cache: {e:#}");
        }
    }
    Ok(record)
}

fn cmd_gseq(d: usize, n: usize, method: Method, format: Format, cache: Option<&Cache>) -> Result<String> {
    ensure!(d >= 1, "d must be at least 1");
    ensure!(n >= 1, "need at least one term");
    let record = match method {
        Method::Det => det_record(d, n, cache)?,
        Method::Direct => {
            if n > DIRECT_TERM_LIMIT {
                bail!("refusing the direct method beyond {DIRECT_TERM_LIMIT} terms (asked for {n}); use --method det");
            }
            let terms: Vec<BigInt> = (1..=n).map(|k| g_direct(d, k)).collect();
            SequenceRecord::new(d, Method::Direct, &terms)
        }
        Method::Brute => {
            let terms: Vec<BigInt> = (1..=n)
                .map(|k| count_by_lis_brute(d, k).map(|(avoiders, _)| avoiders))
                .collect::<liscount::Result<_>>()?;
            SequenceRecord::new(d, Method::Brute, &terms)
        }
    };
    Ok(match format {
        Format::Plain => record.terms.join(" "),
        Format::Json => serde_json::to_string(&record)?,
        Format::Latex => render::terms_latex(&record.parsed_terms()?),
    })
}

fn cmd_table(dmax: usize, nmax: usize, format: Format) -> Result<String> {
    ensure!(dmax >= 1, "dmax must be at least 1");
    ensure!(nmax >= 1, "nmax must be at least 1");
    if nmax > DIRECT_TERM_LIMIT {
        bail!("refusing the direct method beyond {DIRECT_TERM_LIMIT} terms (asked for {nmax})");
    }
    let mut lines = Vec::new();
    for d in 1..=dmax.min(nmax) {
        let terms: Vec<BigInt> = (d..=nmax).map(|n| g_direct(d, n)).collect();
        let row = TableRow {
            d,
            from: d,
            terms: terms.iter().map(BigInt::to_string).collect(),
        };
        lines.push(match format {
            Format::Plain | Format::Latex => format!("{d}: {}", render::terms_plain(&terms)),
            Format::Json => serde_json::to_string(&row)?,
        });
    }
    Ok(lines.join("\n"))
}

fn cmd_bigeval(
    r: usize,
    d_literal: &str,
    symbolic: bool,
    format: Format,
    cache: Option<&Cache>,
) -> Result<String> {
    let d = biglit::parse_big_literal(d_literal)?;
    let bound = validity_bound(r);
    if d < bound {
        bail!("d = {d} is below the validity bound d >= {bound} for offset r = {r}");
    }
    warn_beyond_table(r);
    let poly = cached_b_poly(r, cache)?;
    let horner = poly.evaluate(&d);
    let power_sum = poly.evaluate_by_powers(&d);
    ensure!(
        horner == power_sum,
        "internal error: the two evaluation schemes disagree at r = {r}, d = {d}"
    );
    ensure!(
        horner.is_integer(),
        "internal error: non-integer count at r = {r}, d = {d}"
    );
    let containers = horner.to_integer();
    let decimal = containers.to_string();
    let factorial_arg = (&d + BigInt::from(r)).to_string();

    let record = BigevalRecord {
        r,
        d: d.to_string(),
        digits: decimal.len(),
        containers: decimal,
        factorial_arg: symbolic.then(|| factorial_arg.clone()),
    };
    Ok(match format {
        Format::Json => serde_json::to_string(&record)?,
        Format::Plain | Format::Latex => {
            let mut lines = vec![
                format!("containers: {}", record.containers),
                format!("digits: {}", record.digits),
            ];
            if symbolic {
                lines.push(format!("avoiders: ({factorial_arg})! - {}", record.containers));
            }
            lines.join("\n")
        }
    })
}
