//! The necessary-condition battery for tilings of S_n by T_n and T_n*.
//!
//! Each criterion inspects one obstruction and answers `excluded` (no tiling
//! can exist) or `silent` (this test says nothing). No criterion ever claims
//! existence; when the whole battery is silent the verdict is `open` and the
//! question goes to the exhaustive search.
//!
//! All verdicts are decided with exact integer or rational arithmetic.
//! Factorial divisibility compares prime multiplicities instead of building
//! factorials, and the prime threshold p >= sqrt(n)+1 is evaluated as
//! (p-1)^2 >= n, so no verdict path touches floating point.

use serde::{Deserialize, Serialize};

use crate::arith::{factorial_mod, factorize, prime_multiplicity_in_factorial};
use crate::central::{default_beta, hoffman_report};
use crate::classes::Target;
use crate::error::Error;
use crate::partition::{enumerate_partitions, Partition};
use crate::ratio::{format_rational, rational_int, Rational};

/// Names of the criteria, in the order `aggregate` runs them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionName {
    Counting,
    Divisibility,
    Prime,
    ZeroEigenvalue,
    Hoffman,
}

impl std::fmt::Display for CriterionName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CriterionName::Counting => "counting",
            CriterionName::Divisibility => "divisibility",
            CriterionName::Prime => "prime",
            CriterionName::ZeroEigenvalue => "zero_eigenvalue",
            CriterionName::Hoffman => "hoffman",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Excluded,
    Silent,
}

/// Outcome of one criterion, with enough detail to re-verify the verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub name: CriterionName,
    pub target: Target,
    pub n: usize,
    pub verdict: Verdict,
    pub detail: CriterionDetail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriterionDetail {
    /// |T| must divide n! for translates to partition the group.
    Counting {
        set_size: u64,
        factorial_remainder: u64,
    },
    /// A qualifying partition whose part factorials miss a prime power of
    /// the divisor.
    Divisibility {
        divisor: u64,
        violators: Vec<DivisibilityViolation>,
    },
    /// Prime divisor p of 1 + n(n-1)/2 with (p-1)^2 >= n.
    Prime {
        divisor: u64,
        factors: Vec<(u64, u32)>,
        prime: Option<u64>,
        /// Whether the stricter classical threshold (p-2)^2 >= n also fires.
        original_threshold_fires: bool,
    },
    /// No partition of n attains the content sum that would make 0 an
    /// eigenvalue of the relevant Cayley graph.
    ZeroEigenvalue {
        required_content_sum: i64,
        witness: Option<Partition>,
        partitions_scanned: u64,
    },
    /// Density bound strictly below the tiling density 1/|T|.
    Hoffman {
        beta: [String; 3],
        ratio_bound: String,
        density_threshold: String,
        ell_min: String,
        weighted_degree: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisibilityViolation {
    pub lambda: Partition,
    /// sum_i lambda_i (lambda_i - 2i + 1), twice the content sum.
    pub weighted_row_sum: i64,
    /// Prime whose multiplicity in the part factorials falls short.
    pub prime: u64,
    pub required: u64,
    pub available: u64,
}

/// Excluded iff |T| does not divide n!, so no set of translates can have the
/// right cardinality.
pub fn counting_criterion(n: usize, target: Target) -> Result<CriterionReport, Error> {
    require_degree(n, 2, "counting criterion")?;
    let set_size = target.set_size(n);
    let remainder = factorial_mod(n as u64, set_size);
    Ok(CriterionReport {
        name: CriterionName::Counting,
        target,
        n,
        verdict: if remainder == 0 {
            Verdict::Silent
        } else {
            Verdict::Excluded
        },
        detail: CriterionDetail::Counting {
            set_size,
            factorial_remainder: remainder,
        },
    })
}

/// Scans partitions with nonnegative (T) or positive (T_star) weighted row
/// sum and reports the first one whose part factorials are not divisible by
/// |T|. Short-circuits at the first violator.
pub fn divisibility_criterion(n: usize, target: Target) -> Result<CriterionReport, Error> {
    divisibility_report(n, target, false)
}

/// Like [`divisibility_criterion`] but collects every violator.
pub fn divisibility_criterion_all(n: usize, target: Target) -> Result<CriterionReport, Error> {
    divisibility_report(n, target, true)
}

fn divisibility_report(
    n: usize,
    target: Target,
    all_violators: bool,
) -> Result<CriterionReport, Error> {
    require_degree(n, 3, "divisibility criterion")?;
    let divisor = target.set_size(n);
    let factors = factorize(divisor);
    let mut violators = Vec::new();
    for lambda in enumerate_partitions(n)? {
        let weighted = lambda.weighted_row_sum();
        let qualifies = match target {
            Target::T => weighted >= 0,
            Target::TStar => weighted > 0,
        };
        if !qualifies {
            continue;
        }
        if let Some((prime, required, available)) = missing_prime_power(&lambda, &factors) {
            violators.push(DivisibilityViolation {
                lambda,
                weighted_row_sum: weighted,
                prime,
                required,
                available,
            });
            if !all_violators {
                break;
            }
        }
    }
    Ok(CriterionReport {
        name: CriterionName::Divisibility,
        target,
        n,
        verdict: if violators.is_empty() {
            Verdict::Silent
        } else {
            Verdict::Excluded
        },
        detail: CriterionDetail::Divisibility { divisor, violators },
    })
}

/// First prime power of `factors` not covered by prod_i lambda_i!.
fn missing_prime_power(lambda: &Partition, factors: &[(u64, u32)]) -> Option<(u64, u64, u64)> {
    for &(p, e) in factors {
        let available: u64 = lambda
            .parts()
            .iter()
            .map(|&part| prime_multiplicity_in_factorial(part as u64, p))
            .sum();
        if available < e as u64 {
            return Some((p, e as u64, available));
        }
    }
    None
}

/// Excluded iff some prime divisor p of 1 + n(n-1)/2 satisfies
/// (p-1)^2 >= n. Applies to T_n only.
pub fn prime_criterion(n: usize) -> Result<CriterionReport, Error> {
    require_degree(n, 3, "prime criterion")?;
    let divisor = Target::T.set_size(n);
    let factors = factorize(divisor);
    // if any prime factor passes the threshold the largest one does
    let largest = factors.last().map(|&(p, _)| p);
    let firing = largest.filter(|&p| (p - 1) * (p - 1) >= n as u64);
    let original = firing.is_some_and(|p| (p - 2) * (p - 2) >= n as u64);
    Ok(CriterionReport {
        name: CriterionName::Prime,
        target: Target::T,
        n,
        verdict: if firing.is_some() {
            Verdict::Excluded
        } else {
            Verdict::Silent
        },
        detail: CriterionDetail::Prime {
            divisor,
            factors,
            prime: firing,
            original_threshold_fires: original,
        },
    })
}

/// The partition ((p-1)^q, r) from the division n = (p-1)q + r with
/// 0 <= r <= p-2, together with its weighted row sum evaluated both by the
/// closed form (p-1)(p-1-q)q + r(r-2q-1) and directly; the two are asserted
/// equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RothausPartition {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub lambda: Partition,
    pub weighted_row_sum: i64,
}

pub fn rothaus_partition(n: usize, p: u64) -> Result<RothausPartition, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if p < 2 {
        return Err(Error::InvalidInput(format!(
            "p must be at least 2, got {p}"
        )));
    }
    let q = n as u64 / (p - 1);
    let r = n as u64 % (p - 1);
    let mut parts = vec![(p - 1) as usize; q as usize];
    if r > 0 {
        parts.push(r as usize);
    }
    let lambda = Partition::new(parts)?;
    let closed_form = {
        let (p, q, r) = (p as i64, q as i64, r as i64);
        (p - 1) * (p - 1 - q) * q + r * (r - 2 * q - 1)
    };
    let direct = lambda.weighted_row_sum();
    assert_eq!(
        closed_form, direct,
        "row-sum identity failed at n={n}, p={p}"
    );
    Ok(RothausPartition {
        n,
        p,
        q,
        r,
        lambda,
        weighted_row_sum: direct,
    })
}

/// For T: excluded iff no partition of n has content sum -1, so 0 is not an
/// eigenvalue of the Cayley graph on T_n (eigenvalues 1 + content sum).
/// For T_star: the same with content sum 0.
pub fn zero_eigenvalue_criterion(n: usize, target: Target) -> Result<CriterionReport, Error> {
    require_degree(n, 3, "zero-eigenvalue criterion")?;
    let required = match target {
        Target::T => -1,
        Target::TStar => 0,
    };
    let mut witness = None;
    let mut scanned = 0u64;
    for lambda in enumerate_partitions(n)? {
        scanned += 1;
        if lambda.content_sum() == required {
            witness = Some(lambda);
            break;
        }
    }
    Ok(CriterionReport {
        name: CriterionName::ZeroEigenvalue,
        target,
        n,
        verdict: if witness.is_some() {
            Verdict::Silent
        } else {
            Verdict::Excluded
        },
        detail: CriterionDetail::ZeroEigenvalue {
            required_content_sum: required,
            witness,
            partitions_scanned: scanned,
        },
    })
}

/// Excluded iff the weighted Hoffman density bound is strictly below 1/|T|,
/// compared as exact rationals. `beta` defaults to (2,3,2) for T and (0,3,2)
/// for T_star.
pub fn hoffman_criterion(
    n: usize,
    target: Target,
    beta: Option<&[Rational; 3]>,
) -> Result<CriterionReport, Error> {
    require_degree(n, 3, "hoffman criterion")?;
    let beta = beta.cloned().unwrap_or_else(|| default_beta(target));
    let report = hoffman_report(n, &beta)?;
    let threshold = rational_int(1) / rational_int(target.set_size(n) as i64);
    let excluded = report.ratio_bound < threshold;
    Ok(CriterionReport {
        name: CriterionName::Hoffman,
        target,
        n,
        verdict: if excluded {
            Verdict::Excluded
        } else {
            Verdict::Silent
        },
        detail: CriterionDetail::Hoffman {
            beta: [
                format_rational(&beta[0]),
                format_rational(&beta[1]),
                format_rational(&beta[2]),
            ],
            ratio_bound: format_rational(&report.ratio_bound),
            density_threshold: format_rational(&threshold),
            ell_min: format_rational(&report.ell_min),
            weighted_degree: format_rational(&report.weighted_degree),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    Excluded,
    Open,
}

/// The whole battery for one (n, target), in deterministic order: counting,
/// divisibility, prime (T only), zero-eigenvalue, hoffman.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Aggregate {
    pub n: usize,
    pub target: Target,
    pub reports: Vec<CriterionReport>,
    pub overall: OverallVerdict,
}

pub fn aggregate(n: usize, target: Target) -> Result<Aggregate, Error> {
    require_degree(n, 3, "criteria aggregation")?;
    let mut reports = vec![
        counting_criterion(n, target)?,
        divisibility_criterion(n, target)?,
    ];
    if target == Target::T {
        reports.push(prime_criterion(n)?);
    }
    reports.push(zero_eigenvalue_criterion(n, target)?);
    reports.push(hoffman_criterion(n, target, None)?);
    let overall = if reports.iter().any(|r| r.verdict == Verdict::Excluded) {
        OverallVerdict::Excluded
    } else {
        OverallVerdict::Open
    };
    Ok(Aggregate {
        n,
        target,
        reports,
        overall,
    })
}

fn require_degree(n: usize, min: usize, what: &str) -> Result<(), Error> {
    if n < min {
        return Err(Error::InvalidInput(format!(
            "{what} needs n >= {min}, got {n}"
        )));
    }
    Ok(())
}
