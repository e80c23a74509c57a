//! Exhaustive tiling search and witness verification.
//!
//! A tiling (X, Y) means every group element factors uniquely as x·y. For
//! X = T_n or T_n* that is an exact cover problem: the universe is S_n, one
//! candidate row per y in S_n with entries X·y, and the tilings are exactly
//! the exact covers. Since right-translating Y preserves tilings, the search
//! is normalized by pre-selecting the row of the identity, which loses no
//! solutions.
//!
//! Equivalently, Y tiles iff Y is an independent set of size n!/|X| in the
//! Cayley graph on the class union X^2 \ {id}; [`is_independent_set`] checks
//! that formulation directly and the test suite plays the two against each
//! other.

use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::arith::factorial_u64;
use crate::classes::{generator_set, ClassSet, Target};
use crate::dlx::{Dlx, RunOutcome, SearchControl};
use crate::error::Error;
use crate::perm::{enumerate_group_bounded, Permutation};

/// Default degree cap for the exact-cover search (universe 7! = 5040).
/// Degree 8 works but costs a 40320-column matrix; opt in via
/// [`SearchOptions::max_n`].
pub const DEFAULT_SEARCH_MAX_N: usize = 7;

/// Degree cap for witness verification (the coverage table has n! entries).
pub const VERIFY_MAX_N: usize = 10;

/// A candidate or confirmed tiling complement Y for one target set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingWitness {
    n: usize,
    target: Target,
    members: Vec<Permutation>,
}

impl TilingWitness {
    /// Members are sorted and must be distinct permutations of degree n.
    pub fn new(n: usize, target: Target, members: Vec<Permutation>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "witness degree must be at least 2, got {n}"
            )));
        }
        let mut members = members;
        for m in &members {
            if m.degree() != n {
                return Err(Error::DegreeMismatch(m.degree(), n));
            }
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate witness member".into()));
        }
        Ok(TilingWitness { n, target, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    /// n!/|X| when integral: the only size a valid witness can have.
    pub fn required_size(n: usize, target: Target) -> Option<u64> {
        let order = factorial_u64(n);
        let set_size = target.set_size(n);
        order.is_multiple_of(set_size).then(|| order / set_size)
    }
}

/// Verification outcome; `defect` pins down a failure when not valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub defect: Option<CoverDefect>,
}

/// The smallest-rank group element whose factorization count is not one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverDefect {
    Uncovered { element: Permutation },
    MultiplyCovered { element: Permutation, count: u32 },
}

impl std::fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoverDefect::Uncovered { element } => {
                write!(f, "element {element} has no factorization")
            }
            CoverDefect::MultiplyCovered { element, count } => {
                write!(f, "element {element} has {count} factorizations")
            }
        }
    }
}

/// Checks combinatorially that every element of S_n is x·y for exactly one
/// pair. An invalid witness is a `valid: false` report, not an error.
pub fn verify_tiling(witness: &TilingWitness) -> Result<VerifyReport, Error> {
    let n = witness.n;
    if n > VERIFY_MAX_N {
        return Err(Error::BoundExceeded {
            quantity: "degree for tiling verification",
            value: n as u64,
            bound: VERIFY_MAX_N as u64,
        });
    }
    let x_set = generator_set(n, witness.target)?;
    let order = factorial_u64(n) as usize;
    let mut counts = vec![0u32; order];
    for x in &x_set {
        for y in &witness.members {
            counts[(x * y).rank() as usize] += 1;
        }
    }
    for (rank, &count) in counts.iter().enumerate() {
        if count != 1 {
            let element = Permutation::unrank(n, rank as u64)?;
            let defect = if count == 0 {
                CoverDefect::Uncovered { element }
            } else {
                CoverDefect::MultiplyCovered { element, count }
            };
            return Ok(VerifyReport {
                valid: false,
                defect: Some(defect),
            });
        }
    }
    Ok(VerifyReport {
        valid: true,
        defect: None,
    })
}

/// Independence of a vertex set in the Cayley graph on a normal connection
/// set: no y1 != y2 with y1·y2^(-1) in the set. Returns the first violating
/// pair, if any.
pub fn is_independent_set(
    members: &[Permutation],
    connection: &ClassSet,
) -> Result<Option<(Permutation, Permutation)>, Error> {
    for m in members {
        if m.degree() != connection.n() {
            return Err(Error::DegreeMismatch(m.degree(), connection.n()));
        }
    }
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if connection.contains(&(a * &b.inverse())) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// Result of an intersection-avoidance check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidanceReport {
    pub avoids: bool,
    pub counterexample: Option<(Permutation, Permutation)>,
}

/// True iff no two distinct members y1, y2 have y1·y2^(-1) fixing exactly
/// `intersection` points. Values outside 0..=n can never be a fixed-point
/// count, so the check holds vacuously for them.
pub fn avoids_intersection(
    members: &[Permutation],
    intersection: i64,
) -> Result<AvoidanceReport, Error> {
    if let Some(first) = members.first() {
        let n = first.degree();
        for m in members {
            if m.degree() != n {
                return Err(Error::DegreeMismatch(m.degree(), n));
            }
        }
    }
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if (a * &b.inverse()).fixed_points() as i64 == intersection {
                return Ok(AvoidanceReport {
                    avoids: false,
                    counterexample: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    Ok(AvoidanceReport {
        avoids: true,
        counterexample: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Found,
    None,
}

/// What a finished search proved.
#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub n: usize,
    pub target: Target,
    pub outcome: SearchOutcome,
    pub witness: Option<TilingWitness>,
    /// Exact-cover row trials. Stable across runs in deterministic mode.
    pub nodes_explored: u64,
    pub wall_time: Duration,
    /// True iff the outcome is definitive: a `None` with this flag means the
    /// full normalized search tree was traversed and no tiling exists; a
    /// `Found` is definitive by itself and always carries true. Only a time
    /// budget interruption clears it.
    pub exhaustive: bool,
    /// Always true: solutions are normalized to contain the identity.
    pub normalized: bool,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Forces a single worker and reproducible node counts.
    pub deterministic: bool,
    pub time_budget: Option<Duration>,
    pub threads: usize,
    /// Degree cap; raising it past [`DEFAULT_SEARCH_MAX_N`] is the explicit
    /// override for the 8! universe.
    pub max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            deterministic: false,
            time_budget: None,
            threads: 1,
            max_n: DEFAULT_SEARCH_MAX_N,
        }
    }
}

/// Exhaustive search for a tiling (X, Y) with id in Y, via dancing links
/// over the translate rows X·y.
///
/// The counting precondition is checked first: when |X| does not divide n!
/// there is nothing to search and the answer is an exhaustive `None`. A
/// `None` under an expired time budget is marked non-exhaustive instead.
pub fn search(
    n: usize,
    target: Target,
    options: &SearchOptions,
) -> Result<SearchCertificate, Error> {
    let started = Instant::now();
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "search needs degree at least 2, got {n}"
        )));
    }
    if n > options.max_n {
        return Err(Error::BoundExceeded {
            quantity: "degree for tiling search",
            value: n as u64,
            bound: options.max_n as u64,
        });
    }
    let certificate = |outcome, witness, nodes, exhaustive, started: Instant| SearchCertificate {
        n,
        target,
        outcome,
        witness,
        nodes_explored: nodes,
        wall_time: started.elapsed(),
        exhaustive,
        normalized: true,
    };

    if TilingWitness::required_size(n, target).is_none() {
        return Ok(certificate(SearchOutcome::None, None, 0, true, started));
    }

    // Build the cover matrix: column r+1 is the group element of rank r and
    // row y (added in rank order, so row id = rank of y) covers X·y.
    let group = enumerate_group_bounded(n, options.max_n)?;
    let x_set = generator_set(n, target)?;
    let mut dlx = Dlx::new(group.len());
    for y in &group {
        let mut cols: Vec<usize> = x_set.iter().map(|x| (x * y).rank() as usize + 1).collect();
        cols.sort_unstable();
        dlx.add_row(&cols);
    }
    dlx.preselect_row(0); // normalization: id is a member

    let deadline = options.time_budget.map(|budget| started + budget);
    let workers = if options.deterministic {
        1
    } else {
        options.threads.max(1)
    };

    let (outcome, chosen_rows, nodes) = if workers == 1 {
        let mut control = SearchControl::new(deadline, None);
        let mut solution = Vec::new();
        let outcome = dlx.search_first(&mut control, &mut solution);
        (outcome, solution, control.nodes)
    } else {
        run_parallel(&dlx, workers, deadline)
    };

    match outcome {
        RunOutcome::Found => {
            let mut members: Vec<Permutation> = vec![Permutation::identity(n)?];
            for row in chosen_rows {
                members.push(group[row].clone());
            }
            let witness = TilingWitness::new(n, target, members)?;
            let report = verify_tiling(&witness)?;
            assert!(
                report.valid,
                "search produced an invalid witness: {:?}",
                report.defect
            );
            Ok(certificate(
                SearchOutcome::Found,
                Some(witness),
                nodes,
                true,
                started,
            ))
        }
        RunOutcome::Exhausted => Ok(certificate(SearchOutcome::None, None, nodes, true, started)),
        RunOutcome::Aborted => Ok(certificate(
            SearchOutcome::None,
            None,
            nodes,
            false,
            started,
        )),
    }
}

/// Fans the candidates of the first branching column out across workers.
/// Each worker owns private copies of the cover structure, so the existence
/// outcome is independent of the worker count.
fn run_parallel(
    base: &Dlx,
    workers: usize,
    deadline: Option<Instant>,
) -> (RunOutcome, Vec<usize>, u64) {
    let column = match base.min_column() {
        None => return (RunOutcome::Found, Vec::new(), 0),
        Some(c) => c,
    };
    let candidates = base.column_rows(column);
    if candidates.is_empty() {
        return (RunOutcome::Exhausted, Vec::new(), 0);
    }

    let stop = AtomicBool::new(false);
    let aborted = AtomicBool::new(false);
    let total_nodes = AtomicU64::new(0);
    let found: Mutex<Option<Vec<usize>>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for worker in 0..workers.min(candidates.len()) {
            let my_candidates: Vec<usize> = candidates
                .iter()
                .copied()
                .skip(worker)
                .step_by(workers)
                .collect();
            let stop = &stop;
            let aborted = &aborted;
            let total_nodes = &total_nodes;
            let found = &found;
            scope.spawn(move || {
                for candidate in my_candidates {
                    if stop.load(Ordering::Relaxed) {
                        break;
                    }
                    if deadline.is_some_and(|d| Instant::now() >= d) {
                        aborted.store(true, Ordering::Relaxed);
                        break;
                    }
                    let mut matrix = base.clone();
                    matrix.preselect_row(candidate);
                    let mut control = SearchControl::new(deadline, Some(stop));
                    let mut solution = vec![candidate];
                    match matrix.search_first(&mut control, &mut solution) {
                        RunOutcome::Found => {
                            let mut slot = found.lock().unwrap();
                            if slot.is_none() {
                                *slot = Some(solution);
                            }
                            stop.store(true, Ordering::Relaxed);
                        }
                        RunOutcome::Aborted => {
                            if !stop.load(Ordering::Relaxed) {
                                aborted.store(true, Ordering::Relaxed);
                            }
                        }
                        RunOutcome::Exhausted => {}
                    }
                    total_nodes.fetch_add(control.nodes, Ordering::Relaxed);
                }
            });
        }
    });

    let nodes = total_nodes.load(Ordering::Relaxed);
    let solution = found.lock().unwrap().take();
    match solution {
        Some(rows) => (RunOutcome::Found, rows, nodes),
        None if aborted.load(Ordering::Relaxed) => (RunOutcome::Aborted, Vec::new(), nodes),
        None => (RunOutcome::Exhausted, Vec::new(), nodes),
    }
}

/// Witness file form: `n TARGET` on the first line, then one member per line
/// in image form. See [`witness_from_str`] for the exact grammar.
pub fn witness_to_string(witness: &TilingWitness) -> String {
    let mut out = format!("{} {}\n", witness.n, witness.target.file_token());
    for member in &witness.members {
        out.push_str(&member.to_string());
        out.push('\n');
    }
    out
}

/// Parses the witness format, validating bijectivity, consistent degree and
/// distinctness; errors carry 1-based line numbers.
pub fn witness_from_str(text: &str) -> Result<TilingWitness, Error> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::WitnessFormat {
        line: 1,
        message: "empty witness file".into(),
    })?;
    let mut head_tokens = header.split_whitespace();
    let n: usize = head_tokens
        .next()
        .ok_or(Error::WitnessFormat {
            line: 1,
            message: "missing degree".into(),
        })?
        .parse()
        .map_err(|_| Error::WitnessFormat {
            line: 1,
            message: format!("invalid degree in {header:?}"),
        })?;
    let target: Target = match head_tokens.next() {
        Some("TN") => Target::T,
        Some("TNSTAR") => Target::TStar,
        other => {
            return Err(Error::WitnessFormat {
                line: 1,
                message: format!("expected TN or TNSTAR, got {other:?}"),
            })
        }
    };
    if head_tokens.next().is_some() {
        return Err(Error::WitnessFormat {
            line: 1,
            message: "trailing tokens after header".into(),
        });
    }
    let mut members = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (index, line) in lines {
        let line_no = index + 1;
        if line.trim().is_empty() {
            continue;
        }
        let member = Permutation::parse_images(line).map_err(|e| Error::WitnessFormat {
            line: line_no,
            message: e.to_string(),
        })?;
        if member.degree() != n {
            return Err(Error::WitnessFormat {
                line: line_no,
                message: format!("degree {} does not match header {n}", member.degree()),
            });
        }
        if !seen.insert(member.clone()) {
            return Err(Error::WitnessFormat {
                line: line_no,
                message: format!("duplicate member {member}"),
            });
        }
        members.push(member);
    }
    TilingWitness::new(n, target, members)
}

pub fn save_witness(witness: &TilingWitness, path: impl AsRef<Path>) -> Result<(), Error> {
    std::fs::write(path, witness_to_string(witness))?;
    Ok(())
}

pub fn load_witness(path: impl AsRef<Path>) -> Result<TilingWitness, Error> {
    let text = std::fs::read_to_string(path)?;
    witness_from_str(&text)
}
