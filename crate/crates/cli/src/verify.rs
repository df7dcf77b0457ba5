//! The `verify` subcommand: recomputes the same counts along every
//! independent route (enumeration, diagram sums, determinant, polynomial)
//! within user-given limits, checks the stored cache against fresh
//! computation, and reports one line per identity.

use anyhow::Result;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use liscount::{
    b_direct, b_poly, count_by_lis_brute, enumerate_syt, factorial, g_direct, gessel_sequence,
    partitions_of, validity_bound, Permutation,
};

use crate::cache::{Cache, CacheEntry};

/// Hard ceilings for the enumeration-based checks, matching the library's
/// own refusal guards.
const BRUTE_N_MAX: usize = 10;
const BACKTRACK_N_MAX: usize = 8;
const SCHENSTED_N_MAX: usize = 7;

#[derive(Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl Report {
    pub fn render_plain(&self) -> String {
        let mut lines = Vec::new();
        for check in &self.checks {
            if check.passed {
                let mut line = format!("ok   {} ({} checks)", check.name, check.checks);
                if let Some(detail) = &check.detail {
                    line.push_str(&format!(" [{detail}]"));
                }
                lines.push(line);
            } else {
                lines.push(format!(
                    "FAIL {}: {}",
                    check.name,
                    check.detail.as_deref().unwrap_or("mismatch")
                ));
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let failed = self.checks.len() - passed;
        lines.push(format!("{passed} passed, {failed} failed"));
        lines.join("\n")
    }
}

fn run_check(
    report: &mut Report,
    name: &str,
    body: impl FnOnce() -> Result<usize, String>,
) {
    let result = body();
    let passed = result.is_ok();
    report.passed &= passed;
    report.checks.push(match result {
        Ok(checks) => CheckResult {
            name: name.to_string(),
            passed: true,
            checks,
            detail: None,
        },
        Err(detail) => CheckResult {
            name: name.to_string(),
            passed: false,
            checks: 0,
            detail: Some(detail),
        },
    });
}

pub fn run_suite(dmax: usize, nmax: usize, rmax: usize, cache: Option<&Cache>) -> Report {
    let mut report = Report {
        checks: Vec::new(),
        passed: true,
    };

    run_check(&mut report, "brute force vs direct sums", || {
        let mut checks = 0;
        for d in 1..=dmax {
            for n in 1..=nmax.min(BRUTE_N_MAX) {
                let (avoiders, containers) =
                    count_by_lis_brute(d, n).map_err(|e| e.to_string())?;
                if avoiders != g_direct(d, n) {
                    return Err(format!("avoiders differ at d = {d}, n = {n}"));
                }
                if containers != b_direct(d, n) {
                    return Err(format!("containers differ at d = {d}, n = {n}"));
                }
                checks += 2;
            }
        }
        Ok(checks)
    });

    run_check(&mut report, "determinant vs direct sums", || {
        let mut checks = 0;
        for d in 1..=dmax {
            let terms = gessel_sequence(d, nmax);
            for n in 1..=nmax {
                if terms[n - 1] != g_direct(d, n) {
                    return Err(format!("terms differ at d = {d}, n = {n}"));
                }
                checks += 1;
            }
        }
        Ok(checks)
    });

    run_check(&mut report, "polynomial vs direct sums", || {
        let mut checks = 0;
        for r in 0..=rmax {
            let poly = b_poly(r);
            let mut d = validity_bound(r);
            let top = BigInt::from(r + 4);
            while d <= top {
                let value = poly.evaluate(&d);
                if !value.is_integer() {
                    return Err(format!("non-integer value at r = {r}, d = {d}"));
                }
                let n: usize = (&d + BigInt::from(r)).try_into().expect("small here");
                let dd: usize = d.clone().try_into().expect("small here");
                if value.to_integer() != b_direct(dd, n) {
                    return Err(format!("values differ at r = {r}, d = {d}"));
                }
                checks += 1;
                d += BigInt::one();
            }
        }
        Ok(checks)
    });

    run_check(&mut report, "squared tableau counts sum to n!", || {
        let mut checks = 0;
        for n in 0..=nmax.min(BRUTE_N_MAX) {
            let total: BigInt = partitions_of(n)
                .iter()
                .map(|shape| {
                    let f = shape.count_syt();
                    &f * &f
                })
                .sum();
            if total != factorial(n) {
                return Err(format!("sum differs at n = {n}"));
            }
            checks += 1;
        }
        Ok(checks)
    });

    run_check(&mut report, "hook formula vs tableau backtracking", || {
        let mut checks = 0;
        for n in 0..=nmax.min(BACKTRACK_N_MAX) {
            for shape in partitions_of(n) {
                let enumerated = enumerate_syt(&shape).map_err(|e| e.to_string())?;
                if shape.count_syt() != enumerated {
                    return Err(format!("counts differ for shape {shape}"));
                }
                checks += 1;
            }
        }
        Ok(checks)
    });

    run_check(
        &mut report,
        "insertion shape first row vs longest increasing run",
        || {
            let mut checks = 0;
            for n in 1..=nmax.min(SCHENSTED_N_MAX) {
                let mut values: Vec<usize> = (1..=n).collect();
                loop {
                    let p = Permutation::new(values.clone()).expect("valid by construction");
                    let first_row = p.rsk_shape().parts().first().copied().unwrap_or(0);
                    if first_row != p.lis_length() {
                        return Err(format!("mismatch for permutation {values:?}"));
                    }
                    checks += 1;
                    if !next_permutation(&mut values) {
                        break;
                    }
                }
            }
            Ok(checks)
        },
    );

    match cache {
        None => report.checks.push(CheckResult {
            name: "cache integrity".to_string(),
            passed: true,
            checks: 0,
            detail: Some("caching disabled".to_string()),
        }),
        Some(cache) => {
            // Every file present is hash-validated; recomputation for the
            // comparison stays within the user-given limits so that a large
            // cached run does not turn verification into a large run.
            run_check(&mut report, "cache integrity", || {
                let mut checks = 0;
                for d in cache.sequence_ids() {
                    let file = cache.sequence_path(d);
                    let name = file.file_name().unwrap().to_string_lossy().into_owned();
                    match cache.sequence_entry(d) {
                        CacheEntry::Missing => {}
                        CacheEntry::Corrupt(reason) => {
                            return Err(format!("{name}: {reason}"));
                        }
                        CacheEntry::Valid(record) => {
                            if record.d != d {
                                return Err(format!("{name}: holds a record for d = {}", record.d));
                            }
                            let stored = record.parsed_terms().map_err(|e| e.to_string())?;
                            if d <= dmax {
                                let n = stored.len().min(nmax);
                                let fresh = gessel_sequence(d, n);
                                if stored[..n] != fresh[..] {
                                    return Err(format!(
                                        "{name}: stored terms differ from recomputation"
                                    ));
                                }
                            }
                            checks += 1;
                        }
                    }
                }
                for r in cache.polynomial_ids() {
                    let file = cache.polynomial_path(r);
                    let name = file.file_name().unwrap().to_string_lossy().into_owned();
                    match cache.polynomial_entry(r) {
                        CacheEntry::Missing => {}
                        CacheEntry::Corrupt(reason) => {
                            return Err(format!("{name}: {reason}"));
                        }
                        CacheEntry::Valid(record) => {
                            if record.r != r {
                                return Err(format!("{name}: holds a record for r = {}", record.r));
                            }
                            let stored = record.to_poly().map_err(|e| e.to_string())?;
                            if r <= rmax && stored != b_poly(r) {
                                return Err(format!(
                                    "{name}: stored polynomial differs from recomputation"
                                ));
                            }
                            checks += 1;
                        }
                    }
                }
                Ok(checks)
            });
        }
    }

    report
}

/// Lexicographic successor, false once the values are descending.
fn next_permutation(values: &mut [usize]) -> bool {
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
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}
