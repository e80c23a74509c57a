//! Scan orchestration and report emission.
//!
//! This layer derives nothing itself: every verdict in a scan row comes
//! straight from the criteria module and every search outcome from the
//! search module, so rows can always be re-derived by calling those modules
//! with the same inputs.
//!
//! JSON output has a fixed field order, carries `schema_version`, the tool
//! version and the composition-convention identifier, and is byte-identical
//! across runs for identical inputs in deterministic mode (timings are kept
//! out of serialized reports for exactly that reason).

use serde::{Deserialize, Serialize};

use crate::central::{HoffmanReport, SpectrumTable};
use crate::classes::Target;
use crate::criteria::{aggregate, Aggregate, CriterionName, OverallVerdict, Verdict};
use crate::error::Error;
use crate::partition::enumerate_partitions;
use crate::ratio::format_rational;
use crate::search::{search, SearchCertificate, SearchOptions, SearchOutcome, TilingWitness};
use crate::transitivity::TransitivityReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Identifier of the product convention: the right factor acts first, so a
/// factorization g = x·y applies y and then x.
pub const COMPOSITION_CONVENTION: &str = "right-factor-first";

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Output shape for [`emit_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

/// Per-criterion verdicts of one (n, target) cell, in battery order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionVerdicts {
    pub counting: Verdict,
    pub divisibility: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<Verdict>,
    pub zero_eigenvalue: Verdict,
    pub hoffman: Verdict,
}

impl CriterionVerdicts {
    fn from_aggregate(agg: &Aggregate) -> Self {
        let get = |name: CriterionName| {
            agg.reports
                .iter()
                .find(|r| r.name == name)
                .map(|r| r.verdict)
        };
        CriterionVerdicts {
            counting: get(CriterionName::Counting).expect("counting always runs"),
            divisibility: get(CriterionName::Divisibility).expect("divisibility always runs"),
            prime: get(CriterionName::Prime),
            zero_eigenvalue: get(CriterionName::ZeroEigenvalue)
                .expect("zero-eigenvalue always runs"),
            hoffman: get(CriterionName::Hoffman).expect("hoffman always runs"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowOutcome {
    Excluded,
    Open,
    ResolvedBySearch,
}

/// Search digest embedded in a scan row. Wall time is deliberately absent;
/// node counts are stable in deterministic mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub outcome: SearchOutcome,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<String>>,
}

impl SearchSummary {
    fn from_certificate(cert: &SearchCertificate) -> Self {
        SearchSummary {
            outcome: cert.outcome,
            exhaustive: cert.exhaustive,
            nodes_explored: cert.nodes_explored,
            witness: cert
                .witness
                .as_ref()
                .map(|w| w.members().iter().map(|m| m.to_string()).collect()),
        }
    }
}

/// One (n, target) cell of a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub target: Target,
    pub criteria: CriterionVerdicts,
    pub overall: RowOutcome,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SearchSummary>,
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    /// Attempt the exhaustive search on rows the criteria leave open (only
    /// within the search degree bound).
    pub with_search: bool,
    pub search: SearchOptions,
}

/// Runs the criteria battery (and optionally the search) over a degree
/// range. Rows are ordered by n, then by the caller's target order.
pub fn scan(
    n_min: usize,
    n_max: usize,
    targets: &[Target],
    options: &ScanOptions,
) -> Result<Vec<ScanRow>, Error> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidInput(format!(
            "scan range must satisfy 3 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        for &target in targets {
            let agg = aggregate(n, target)?;
            let criteria = CriterionVerdicts::from_aggregate(&agg);
            let mut overall = match agg.overall {
                OverallVerdict::Excluded => RowOutcome::Excluded,
                OverallVerdict::Open => RowOutcome::Open,
            };
            let mut summary = None;
            if overall == RowOutcome::Open && options.with_search && n <= options.search.max_n {
                let cert = search(n, target, &options.search)?;
                if cert.exhaustive {
                    overall = RowOutcome::ResolvedBySearch;
                }
                summary = Some(SearchSummary::from_certificate(&cert));
            }
            rows.push(ScanRow {
                n,
                target,
                criteria,
                overall,
                search: summary,
            });
        }
    }
    Ok(rows)
}

#[derive(Serialize, Deserialize)]
struct ScanDocument {
    schema_version: u32,
    tool_version: String,
    composition_convention: String,
    rows: Vec<ScanRow>,
}

/// Serializes scan rows: compact JSON with stable field order, or a padded
/// text table.
pub fn emit_report(rows: &[ScanRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let doc = ScanDocument {
                schema_version: SCHEMA_VERSION,
                tool_version: tool_version().to_string(),
                composition_convention: COMPOSITION_CONVENTION.to_string(),
                rows: rows.to_vec(),
            };
            serde_json::to_string(&doc).expect("scan rows serialize")
        }
        ReportFormat::Table => scan_table(rows),
    }
}

/// Inverse of the JSON side of [`emit_report`].
pub fn parse_report(text: &str) -> Result<Vec<ScanRow>, Error> {
    let doc: ScanDocument = serde_json::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    Ok(doc.rows)
}

fn verdict_cell(v: Verdict) -> &'static str {
    match v {
        Verdict::Excluded => "excluded",
        Verdict::Silent => "silent",
    }
}

fn scan_table(rows: &[ScanRow]) -> String {
    let header = [
        "n",
        "target",
        "counting",
        "divisibility",
        "prime",
        "zero_eigenvalue",
        "hoffman",
        "overall",
        "search",
    ];
    let mut body: Vec<[String; 9]> = Vec::with_capacity(rows.len());
    for row in rows {
        let overall = match row.overall {
            RowOutcome::Excluded => "excluded",
            RowOutcome::Open => "open",
            RowOutcome::ResolvedBySearch => "resolved_by_search",
        };
        let search = match &row.search {
            None => "-".to_string(),
            Some(s) => match (s.outcome, s.exhaustive) {
                (SearchOutcome::Found, _) => "found".to_string(),
                (SearchOutcome::None, true) => "none".to_string(),
                (SearchOutcome::None, false) => "inconclusive".to_string(),
            },
        };
        body.push([
            row.n.to_string(),
            row.target.to_string(),
            verdict_cell(row.criteria.counting).to_string(),
            verdict_cell(row.criteria.divisibility).to_string(),
            row.criteria
                .prime
                .map_or("-".to_string(), |v| verdict_cell(v).to_string()),
            verdict_cell(row.criteria.zero_eigenvalue).to_string(),
            verdict_cell(row.criteria.hoffman).to_string(),
            overall.to_string(),
            search,
        ]);
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut write_row = |cells: &[String]| {
        for (i, (cell, width)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            out.extend(std::iter::repeat_n(' ', width - cell.len()));
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    write_row(&header.map(str::to_string));
    for row in &body {
        write_row(row);
    }
    out
}

#[derive(Serialize)]
struct CheckDocument<'a> {
    schema_version: u32,
    tool_version: String,
    composition_convention: String,
    n: usize,
    target: Target,
    criteria: &'a [crate::criteria::CriterionReport],
    overall: OverallVerdict,
}

/// JSON document for one criteria battery, one object per criterion plus the
/// overall verdict.
pub fn check_json(agg: &Aggregate) -> String {
    let doc = CheckDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: tool_version().to_string(),
        composition_convention: COMPOSITION_CONVENTION.to_string(),
        n: agg.n,
        target: agg.target,
        criteria: &agg.reports,
        overall: agg.overall,
    };
    serde_json::to_string(&doc).expect("criteria reports serialize")
}

/// Human form of one criteria battery.
pub fn check_table(agg: &Aggregate) -> String {
    let mut out = format!("n = {}, target = {}\n", agg.n, agg.target);
    for report in &agg.reports {
        out.push_str(&format!(
            "  {:<16} {}\n",
            report.name.to_string(),
            verdict_cell(report.verdict)
        ));
    }
    let overall = match agg.overall {
        OverallVerdict::Excluded => "excluded",
        OverallVerdict::Open => "open",
    };
    out.push_str(&format!("  overall: {overall}\n"));
    out
}

#[derive(Serialize)]
struct SpectrumDocument<'a> {
    n: usize,
    connection: Vec<String>,
    rows: &'a [crate::central::SpectrumRow],
}

/// `{"n":…,"connection":[…],"rows":[{"lambda":"4,2","eigenvalue":"5/1",…}]}`
pub fn spectrum_json(table: &SpectrumTable) -> String {
    let doc = SpectrumDocument {
        n: table.n,
        connection: table.connection.labels(),
        rows: &table.rows,
    };
    serde_json::to_string(&doc).expect("spectrum serializes")
}

pub fn spectrum_table_text(table: &SpectrumTable) -> String {
    let mut out = format!(
        "Cay(S_{}, {{{}}})\n",
        table.n,
        table.connection.labels().join(" ")
    );
    out.push_str(&format!(
        "{:<16} {:>12} {:>14}\n",
        "lambda", "eigenvalue", "multiplicity"
    ));
    for row in &table.rows {
        out.push_str(&format!(
            "{:<16} {:>12} {:>14}\n",
            row.lambda.to_string(),
            format_rational(&row.eigenvalue),
            row.multiplicity
        ));
    }
    out
}

#[derive(Serialize)]
struct HoffmanDocument {
    n: usize,
    beta: [String; 3],
    rows: Vec<HoffmanRowOut>,
    ell_min: String,
    weighted_degree: String,
    ratio_bound: String,
}

#[derive(Serialize)]
struct HoffmanRowOut {
    lambda: crate::partition::Partition,
    ell: String,
}

pub fn hoffman_json(report: &HoffmanReport) -> String {
    let doc = HoffmanDocument {
        n: report.n,
        beta: [
            format_rational(&report.beta[0]),
            format_rational(&report.beta[1]),
            format_rational(&report.beta[2]),
        ],
        rows: report
            .per_lambda
            .iter()
            .map(|(lambda, ell)| HoffmanRowOut {
                lambda: lambda.clone(),
                ell: format_rational(ell),
            })
            .collect(),
        ell_min: format_rational(&report.ell_min),
        weighted_degree: format_rational(&report.weighted_degree),
        ratio_bound: format_rational(&report.ratio_bound),
    };
    serde_json::to_string(&doc).expect("hoffman report serializes")
}

pub fn hoffman_table_text(report: &HoffmanReport) -> String {
    let mut out = format!(
        "n = {}, beta = ({}, {}, {})\n",
        report.n,
        format_rational(&report.beta[0]),
        format_rational(&report.beta[1]),
        format_rational(&report.beta[2]),
    );
    out.push_str(&format!("{:<16} {:>12}\n", "lambda", "ell"));
    for (lambda, ell) in &report.per_lambda {
        out.push_str(&format!(
            "{:<16} {:>12}\n",
            lambda.to_string(),
            format_rational(ell)
        ));
    }
    out.push_str(&format!(
        "ell_min = {}, weighted degree = {}, ratio bound = {}\n",
        format_rational(&report.ell_min),
        format_rational(&report.weighted_degree),
        format_rational(&report.ratio_bound),
    ));
    out
}

#[derive(Serialize)]
struct PartitionsDocument {
    n: usize,
    count: usize,
    partitions: Vec<PartitionRowOut>,
}

#[derive(Serialize)]
struct PartitionRowOut {
    lambda: crate::partition::Partition,
    content_sum: i64,
    dimension: String,
}

/// Partition listing for the `partitions` subcommand, enumeration order.
pub fn partitions_json(n: usize) -> Result<String, Error> {
    let all = enumerate_partitions(n)?;
    let partitions = all
        .iter()
        .map(|lambda| {
            Ok(PartitionRowOut {
                lambda: lambda.clone(),
                content_sum: lambda.content_sum(),
                dimension: lambda.dimension()?.to_string(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let doc = PartitionsDocument {
        n,
        count: partitions.len(),
        partitions,
    };
    Ok(serde_json::to_string(&doc).expect("partitions serialize"))
}

pub fn partitions_table_text(n: usize) -> Result<String, Error> {
    let all = enumerate_partitions(n)?;
    let mut out = format!("{} partitions of {n}\n", all.len());
    out.push_str(&format!(
        "{:<20} {:>12} {:>16}\n",
        "lambda", "content_sum", "dimension"
    ));
    for lambda in &all {
        out.push_str(&format!(
            "{:<20} {:>12} {:>16}\n",
            lambda.to_string(),
            lambda.content_sum(),
            lambda.dimension()?.to_string()
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct SearchDocument {
    schema_version: u32,
    tool_version: String,
    composition_convention: String,
    n: usize,
    target: Target,
    outcome: SearchOutcome,
    exhaustive: bool,
    normalized: bool,
    nodes_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<String>>,
}

/// JSON for one search certificate. Wall time stays out of the document so
/// deterministic runs emit identical bytes; it is reported on stderr by the
/// CLI instead.
pub fn search_json(cert: &SearchCertificate) -> String {
    let doc = SearchDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: tool_version().to_string(),
        composition_convention: COMPOSITION_CONVENTION.to_string(),
        n: cert.n,
        target: cert.target,
        outcome: cert.outcome,
        exhaustive: cert.exhaustive,
        normalized: cert.normalized,
        nodes_explored: cert.nodes_explored,
        witness: cert
            .witness
            .as_ref()
            .map(|w| w.members().iter().map(|m| m.to_string()).collect()),
    };
    serde_json::to_string(&doc).expect("certificate serializes")
}

#[derive(Serialize)]
struct VerifyDocument {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<String>,
    n: usize,
    target: Target,
    members: usize,
}

pub fn verify_json(witness: &TilingWitness, report: &crate::search::VerifyReport) -> String {
    let doc = VerifyDocument {
        valid: report.valid,
        defect: report.defect.as_ref().map(|d| d.to_string()),
        n: witness.n(),
        target: witness.target(),
        members: witness.members().len(),
    };
    serde_json::to_string(&doc).expect("verify report serializes")
}

#[derive(Serialize)]
struct TransitivityDocument {
    lambda: crate::partition::Partition,
    is_transitive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<TransitivityCounterexampleOut>,
}

#[derive(Serialize)]
struct TransitivityCounterexampleOut {
    first: CountedPairOut,
    second: CountedPairOut,
}

#[derive(Serialize)]
struct CountedPairOut {
    from: String,
    to: String,
    count: u64,
}

pub fn transitivity_json(report: &TransitivityReport) -> String {
    let pair = |p: &(
        crate::transitivity::OrderedSetPartition,
        crate::transitivity::OrderedSetPartition,
        u64,
    )| CountedPairOut {
        from: p.0.to_string(),
        to: p.1.to_string(),
        count: p.2,
    };
    let doc = TransitivityDocument {
        lambda: report.lambda.clone(),
        is_transitive: report.is_transitive,
        r: report.r,
        counterexample: report
            .counterexample
            .as_ref()
            .map(|c| TransitivityCounterexampleOut {
                first: pair(&c.first),
                second: pair(&c.second),
            }),
    };
    serde_json::to_string(&doc).expect("transitivity report serializes")
}
