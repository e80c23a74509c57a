//! sn-tiler: obstruction criteria, spectra and exhaustive search for tilings
//! of the symmetric group by transpositions.
//!
//! Exit codes, shared across subcommands:
//!   0  definitive positive (tiling found, witness valid, criteria excluded,
//!      property holds, scan fully resolved)
//!   10 definitive negative (no tiling, witness invalid, criteria open,
//!      property fails, scan left open rows)
//!   11 inconclusive (a search stopped on its time budget)
//!   2  input error

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use sn_tiler_core::central::{default_beta, hoffman_report, spectrum};
use sn_tiler_core::classes::{ClassSet, Target};
use sn_tiler_core::criteria::{
    aggregate, divisibility_criterion_all, CriterionName, OverallVerdict,
};
use sn_tiler_core::error::Error;
use sn_tiler_core::partition::Partition;
use sn_tiler_core::ratio::parse_rational_triple;
use sn_tiler_core::report::{self, ReportFormat, RowOutcome, ScanOptions};
use sn_tiler_core::search::{
    load_witness, save_witness, search, verify_tiling, SearchOptions, SearchOutcome,
    DEFAULT_SEARCH_MAX_N,
};
use sn_tiler_core::transitivity::is_lambda_transitive;

const EXIT_POSITIVE: u8 = 0;
const EXIT_NEGATIVE: u8 = 10;
const EXIT_INCONCLUSIVE: u8 = 11;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "sn-tiler",
    version,
    about = "Tilings of the symmetric group by transpositions: criteria, spectra, search"
)]
struct Cli {
    /// Emit JSON instead of human-readable tables
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the exhaustive search
    #[arg(long, global = true, value_name = "K", default_value_t = 1)]
    threads: usize,

    /// Single-threaded search with reproducible node counts and output bytes
    #[arg(long, global = true)]
    deterministic: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    /// T_n: the identity and all transpositions
    Tn,
    /// T_n*: all transpositions
    Tnstar,
}

impl From<TargetArg> for Target {
    fn from(value: TargetArg) -> Target {
        match value {
            TargetArg::Tn => Target::T,
            TargetArg::Tnstar => Target::TStar,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanTargetArg {
    Tn,
    Tnstar,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConnectionArg {
    /// {id} plus the transposition class
    Tn,
    /// the transposition class
    Tnstar,
    /// T_n^2 \ {id}: transpositions, 3-cycles, double transpositions
    Sigma,
    /// (T_n*)^2 \ {id}: 3-cycles and double transpositions
    SigmaStar,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of n with content sums and dimensions
    Partitions {
        #[arg(long)]
        n: usize,
    },
    /// Exact spectrum of a normal Cayley graph on S_n
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        connection: ConnectionArg,
    },
    /// Weighted Hoffman density bound for independent sets
    Hoffman {
        #[arg(long)]
        n: usize,
        /// Picks the default weights: (2,3,2) for tn, (0,3,2) for tnstar
        #[arg(long, value_enum, default_value = "tn")]
        target: TargetArg,
        /// Explicit weights, e.g. "2,3,2" or "1/2,0,-3"
        #[arg(long)]
        beta: Option<String>,
    },
    /// Run the obstruction criteria battery for one degree
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Hoffman weights override
        #[arg(long)]
        beta: Option<String>,
        /// List every divisibility violator instead of the first
        #[arg(long)]
        all_violators: bool,
    },
    /// Exhaustive dancing-links search for a tiling
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Time budget in seconds; expiry yields exit code 11
        #[arg(long, value_name = "SECONDS")]
        budget: Option<u64>,
        /// Write a found witness to this file
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify a witness file
    Verify {
        #[arg(long, value_name = "FILE")]
        witness: PathBuf,
    },
    /// Check lambda-transitivity of a witness file
    Transitivity {
        #[arg(long, value_name = "FILE")]
        witness: PathBuf,
        /// Partition, e.g. "3,1,1" or "2^2,1"
        #[arg(long)]
        lambda: String,
    },
    /// Run the criteria (and optionally the search) over a degree range
    Scan {
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        #[arg(long, value_enum, default_value = "both")]
        target: ScanTargetArg,
        /// Attempt the exhaustive search on criteria-open rows
        #[arg(long)]
        with_search: bool,
        /// Per-search time budget in seconds
        #[arg(long, value_name = "SECONDS")]
        budget: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Search degree cap: SN_TILER_MAX_N overrides the default of 7.
fn search_bound() -> Result<usize, Error> {
    match std::env::var("SN_TILER_MAX_N") {
        Ok(text) => text
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad SN_TILER_MAX_N value {text:?}"))),
        Err(_) => Ok(DEFAULT_SEARCH_MAX_N),
    }
}

fn search_options(cli: &Cli, budget: Option<u64>) -> Result<SearchOptions, Error> {
    let max_n = search_bound()?;
    if max_n > DEFAULT_SEARCH_MAX_N {
        eprintln!("warning: search bound raised to {max_n}; the cover matrix grows as n! * |T_n|");
    }
    Ok(SearchOptions {
        deterministic: cli.deterministic,
        time_budget: budget.map(Duration::from_secs),
        threads: cli.threads,
        max_n,
    })
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Partitions { n } => {
            if cli.json {
                println!("{}", report::partitions_json(*n)?);
            } else {
                print!("{}", report::partitions_table_text(*n)?);
            }
            Ok(EXIT_POSITIVE)
        }
        Command::Spectrum { n, connection } => {
            let connection = match connection {
                ConnectionArg::Tn => ClassSet::t_n(*n)?,
                ConnectionArg::Tnstar => ClassSet::t_n_star(*n)?,
                ConnectionArg::Sigma => ClassSet::square_t(*n)?,
                ConnectionArg::SigmaStar => ClassSet::square_t_star(*n)?,
            };
            let table = spectrum(*n, &connection)?;
            if cli.json {
                println!("{}", report::spectrum_json(&table));
            } else {
                print!("{}", report::spectrum_table_text(&table));
            }
            Ok(EXIT_POSITIVE)
        }
        Command::Hoffman { n, target, beta } => {
            let beta = match beta {
                Some(text) => parse_rational_triple(text)?,
                None => default_beta((*target).into()),
            };
            let report_data = hoffman_report(*n, &beta)?;
            if cli.json {
                println!("{}", report::hoffman_json(&report_data));
            } else {
                print!("{}", report::hoffman_table_text(&report_data));
            }
            Ok(EXIT_POSITIVE)
        }
        Command::Check {
            n,
            target,
            beta,
            all_violators,
        } => {
            let target: Target = (*target).into();
            let mut agg = aggregate(*n, target)?;
            if let Some(text) = beta {
                let beta = parse_rational_triple(text)?;
                for report in &mut agg.reports {
                    if report.name == CriterionName::Hoffman {
                        *report =
                            sn_tiler_core::criteria::hoffman_criterion(*n, target, Some(&beta))?;
                    }
                }
                agg.overall = if agg
                    .reports
                    .iter()
                    .any(|r| r.verdict == sn_tiler_core::criteria::Verdict::Excluded)
                {
                    OverallVerdict::Excluded
                } else {
                    OverallVerdict::Open
                };
            }
            if *all_violators {
                for report in &mut agg.reports {
                    if report.name == CriterionName::Divisibility {
                        *report = divisibility_criterion_all(*n, target)?;
                    }
                }
            }
            if cli.json {
                println!("{}", report::check_json(&agg));
            } else {
                print!("{}", report::check_table(&agg));
            }
            Ok(match agg.overall {
                OverallVerdict::Excluded => EXIT_POSITIVE,
                OverallVerdict::Open => EXIT_NEGATIVE,
            })
        }
        Command::Search {
            n,
            target,
            budget,
            out,
        } => {
            let options = search_options(cli, *budget)?;
            let cert = search(*n, (*target).into(), &options)?;
            eprintln!(
                "search explored {} nodes in {:?}",
                cert.nodes_explored, cert.wall_time
            );
            if cli.json {
                println!("{}", report::search_json(&cert));
            } else {
                match (&cert.witness, cert.exhaustive) {
                    (Some(witness), _) => {
                        println!(
                            "found a tiling complement of size {}:",
                            witness.members().len()
                        );
                        for member in witness.members() {
                            println!("  {member}");
                        }
                    }
                    (None, true) => println!("no tiling exists (search exhaustive)"),
                    (None, false) => println!("inconclusive: time budget exhausted"),
                }
            }
            if let (Some(path), Some(witness)) = (out, &cert.witness) {
                save_witness(witness, path)?;
                eprintln!("witness written to {}", path.display());
            }
            Ok(match (cert.outcome, cert.exhaustive) {
                (SearchOutcome::Found, _) => EXIT_POSITIVE,
                (SearchOutcome::None, true) => EXIT_NEGATIVE,
                (SearchOutcome::None, false) => EXIT_INCONCLUSIVE,
            })
        }
        Command::Verify { witness } => {
            let witness = load_witness(witness)?;
            let report_data = verify_tiling(&witness)?;
            if cli.json {
                println!("{}", report::verify_json(&witness, &report_data));
            } else if report_data.valid {
                println!(
                    "valid tiling of S_{} by {} with {} members",
                    witness.n(),
                    witness.target(),
                    witness.members().len()
                );
            } else {
                println!(
                    "not a tiling: {}",
                    report_data.defect.as_ref().expect("defect present")
                );
            }
            Ok(if report_data.valid {
                EXIT_POSITIVE
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Transitivity { witness, lambda } => {
            let witness = load_witness(witness)?;
            let lambda: Partition = lambda.parse()?;
            if lambda.n() != witness.n() {
                return Err(Error::WeightMismatch(lambda.n(), witness.n()));
            }
            let report_data = is_lambda_transitive(witness.members(), &lambda)?;
            if cli.json {
                println!("{}", report::transitivity_json(&report_data));
            } else if report_data.is_transitive {
                println!(
                    "{lambda}-transitive with r = {}",
                    report_data.r.expect("constant present")
                );
            } else {
                println!("not {lambda}-transitive");
                if let Some(example) = &report_data.counterexample {
                    println!(
                        "  {} -> {} has {} members, {} -> {} has {}",
                        example.first.0,
                        example.first.1,
                        example.first.2,
                        example.second.0,
                        example.second.1,
                        example.second.2
                    );
                }
            }
            Ok(if report_data.is_transitive {
                EXIT_POSITIVE
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Scan {
            from,
            to,
            target,
            with_search,
            budget,
        } => {
            let targets: Vec<Target> = match target {
                ScanTargetArg::Tn => vec![Target::T],
                ScanTargetArg::Tnstar => vec![Target::TStar],
                ScanTargetArg::Both => vec![Target::T, Target::TStar],
            };
            let options = ScanOptions {
                with_search: *with_search,
                search: search_options(cli, *budget)?,
            };
            let rows = report::scan(*from, *to, &targets, &options)?;
            let format = if cli.json {
                ReportFormat::Json
            } else {
                ReportFormat::Table
            };
            let text = report::emit_report(&rows, format);
            if cli.json {
                println!("{text}");
            } else {
                print!("{text}");
            }
            let interrupted = rows.iter().any(|row| {
                row.overall == RowOutcome::Open
                    && row.search.as_ref().is_some_and(|s| !s.exhaustive)
            });
            let open = rows.iter().any(|row| row.overall == RowOutcome::Open);
            Ok(if interrupted {
                EXIT_INCONCLUSIVE
            } else if open {
                EXIT_NEGATIVE
            } else {
                EXIT_POSITIVE
            })
        }
    }
}
