//! Acceptance suite: one test per release criterion, each printing a PASS
//! line with its runtime. Run with
//! `cargo test -p sn-tiler-core --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use sn_tiler_core::central::{central_character, hoffman_report, spectrum, ClassKind};
use sn_tiler_core::classes::{ClassSet, Target};
use sn_tiler_core::criteria::{
    aggregate, divisibility_criterion, hoffman_criterion, prime_criterion, rothaus_partition,
    zero_eigenvalue_criterion, CriterionDetail, OverallVerdict, Verdict,
};
use sn_tiler_core::partition::{enumerate_partitions, Partition};
use sn_tiler_core::perm::{enumerate_group, Permutation};
use sn_tiler_core::ratio::{rational_int, Rational};
use sn_tiler_core::report::{emit_report, scan, ReportFormat, ScanOptions};
use sn_tiler_core::search::{
    avoids_intersection, is_independent_set, search, verify_tiling, SearchOptions, SearchOutcome,
    TilingWitness,
};
use sn_tiler_core::transitivity::{
    count_ordered_set_partitions, enumerate_ordered_set_partitions, is_lambda_transitive,
    map_count, OrderedSetPartition,
};

fn pass(index: usize, elapsed: Duration, what: &str) {
    println!("acceptance {index:>2}: PASS  [{elapsed:>10.3?}]  {what}");
}

fn ratio(p: i64, q: i64) -> Rational {
    rational_int(p) / rational_int(q)
}

#[test]
fn acceptance_01_content_sum_closed_form() {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=20 {
        for lambda in enumerate_partitions(n).unwrap() {
            assert_eq!(
                lambda.content_sum(),
                common::content_sum_by_boxes(&lambda),
                "content sum mismatch at {lambda}"
            );
            checked += 1;
        }
        // the enumeration itself is cross-checked against the pentagonal
        // recurrence while we are at it
        assert_eq!(
            enumerate_partitions(n).unwrap().len() as u64,
            common::partition_count_oracle(n),
            "p({n})"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    pass(
        1,
        elapsed,
        &format!("closed-form content sums match box enumeration on {checked} partitions, n <= 20"),
    );
}

#[test]
fn acceptance_02_dominance_monotonicity() {
    let start = Instant::now();
    let mut pairs = 0u64;
    for n in 1..=12 {
        let all = enumerate_partitions(n).unwrap();
        for mu in &all {
            for lambda in &all {
                if mu != lambda && mu.dominates(lambda).unwrap() {
                    assert!(
                        mu.content_sum() > lambda.content_sum(),
                        "monotonicity fails: {mu} vs {lambda}"
                    );
                    pairs += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    pass(
        2,
        elapsed,
        &format!("content sums strictly increase along dominance on {pairs} pairs, n <= 12"),
    );
}

#[test]
fn acceptance_03_central_characters_at_trivial() {
    let start = Instant::now();
    for n in 4..=30usize {
        let trivial = Partition::row(n).unwrap();
        let n64 = n as i64;
        let expected = [
            (ClassKind::Transposition, n64 * (n64 - 1) / 2),
            (ClassKind::ThreeCycle, n64 * (n64 - 1) * (n64 - 2) / 3),
            (
                ClassKind::DoubleTransposition,
                n64 * (n64 - 1) * (n64 - 2) * (n64 - 3) / 8,
            ),
        ];
        for (kind, value) in expected {
            assert_eq!(
                central_character(&trivial, kind).unwrap(),
                rational_int(value),
                "n={n} {kind:?}"
            );
        }
    }
    pass(
        3,
        start.elapsed(),
        "central characters at (n) equal d1, d2, d3 for n in 4..=30",
    );
}

#[test]
fn acceptance_04_spectrum_oracle() {
    let start = Instant::now();
    let mut graphs = 0;
    for n in [4usize, 5] {
        let singles = [
            ClassKind::Transposition,
            ClassKind::ThreeCycle,
            ClassKind::DoubleTransposition,
        ]
        .map(|kind| ClassSet::new(n, [kind.cycle_type(n).unwrap()], false).unwrap());
        let mut connections = singles.to_vec();
        connections.push(ClassSet::square_t(n).unwrap());
        connections.push(ClassSet::square_t_star(n).unwrap());
        for connection in connections {
            let table = spectrum(n, &connection).unwrap();
            let numeric = common::numeric_eigenvalues(&connection);
            common::spectra_match(&table, &numeric, 1e-8);
            graphs += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    pass(
        4,
        elapsed,
        &format!("exact spectra match numeric eigensolves of {graphs} Cayley graphs at 1e-8"),
    );
}

#[test]
fn acceptance_05_hoffman_tightness() {
    let start = Instant::now();
    for n in 14..=30usize {
        let report =
            hoffman_report(n, &[rational_int(2), rational_int(3), rational_int(2)]).unwrap();
        let n64 = n as i64;
        assert_eq!(
            report.ratio_bound,
            ratio(2, n64 * n64 - n64 + 2),
            "target T, n={n}"
        );
    }
    let mut star_checked = 0;
    for n in 3..=30usize {
        let admits_zero = enumerate_partitions(n)
            .unwrap()
            .iter()
            .any(|lambda| lambda.content_sum() == 0);
        if !admits_zero {
            continue;
        }
        let report =
            hoffman_report(n, &[rational_int(0), rational_int(3), rational_int(2)]).unwrap();
        let n64 = n as i64;
        assert_eq!(
            report.ratio_bound,
            ratio(2, n64 * n64 - n64),
            "target T_star, n={n}"
        );
        star_checked += 1;
    }
    assert!(star_checked > 0);
    pass(
        5,
        start.elapsed(),
        &format!(
            "default-beta ratio equals 2/(n^2-n+2) for n in 14..=30 and 2/(n^2-n) at {star_checked} \
             zero-content-sum degrees in 3..=30"
        ),
    );
}

#[test]
fn acceptance_06_degree_six_exclusion() {
    let start = Instant::now();
    let zero = zero_eigenvalue_criterion(6, Target::T).unwrap();
    assert_eq!(zero.verdict, Verdict::Excluded);
    assert!(!enumerate_partitions(6)
        .unwrap()
        .iter()
        .any(|lambda| lambda.content_sum() == -1));

    let hoffman = hoffman_criterion(6, Target::T, None).unwrap();
    assert_eq!(hoffman.verdict, Verdict::Excluded);
    let CriterionDetail::Hoffman {
        ratio_bound,
        density_threshold,
        ..
    } = &hoffman.detail
    else {
        panic!("wrong detail shape");
    };
    assert_eq!(ratio_bound, "1/17");
    assert_eq!(density_threshold, "1/16");
    pass(
        6,
        start.elapsed(),
        "degree 6, target T: no content sum -1, and the Hoffman ratio 1/17 < 1/16",
    );
}

#[test]
fn acceptance_07_degree_five_prime_exclusion() {
    let start = Instant::now();
    let report = prime_criterion(5).unwrap();
    assert_eq!(report.verdict, Verdict::Excluded);
    let CriterionDetail::Prime { prime, divisor, .. } = &report.detail else {
        panic!("wrong detail shape");
    };
    assert_eq!(*divisor, 11);
    assert_eq!(*prime, Some(11));
    pass(
        7,
        start.elapsed(),
        "degree 5, target T: prime criterion fires with p = 11",
    );
}

#[test]
fn acceptance_08_degree_four_full_resolution() {
    let start = Instant::now();
    let agg = aggregate(4, Target::T).unwrap();
    assert_eq!(agg.overall, OverallVerdict::Excluded);

    let cert = search(4, Target::TStar, &SearchOptions::default()).unwrap();
    assert_eq!(cert.outcome, SearchOutcome::None);
    assert!(cert.exhaustive);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    pass(
        8,
        elapsed,
        "degree 4: criteria exclude T, exhaustive search excludes T_star",
    );
}

#[test]
fn acceptance_09_degree_three_positive_control() {
    let start = Instant::now();
    let cert = search(3, Target::TStar, &SearchOptions::default()).unwrap();
    assert_eq!(cert.outcome, SearchOutcome::Found);
    let witness = cert.witness.expect("witness present");
    assert!(verify_tiling(&witness).unwrap().valid);

    // independence and size in the square-connection Cayley graph
    assert_eq!(
        witness.members().len() as u64,
        TilingWitness::required_size(3, Target::TStar).unwrap()
    );
    let connection = ClassSet::square_t_star(3).unwrap();
    assert!(is_independent_set(witness.members(), &connection)
        .unwrap()
        .is_none());

    // avoids intersections n-3 and n-4 (the latter vacuous at n=3)
    for i in [0i64, -1] {
        assert!(avoids_intersection(witness.members(), i).unwrap().avoids);
    }
    pass(
        9,
        start.elapsed(),
        "degree 3, target T_star: witness found, verified, independent, avoids n-3 and n-4",
    );
}

#[test]
fn acceptance_10_degree_five_star_cross_validation() {
    let start = Instant::now();
    let report = divisibility_criterion(5, Target::TStar).unwrap();
    assert_eq!(report.verdict, Verdict::Excluded);
    let CriterionDetail::Divisibility { divisor, violators } = &report.detail else {
        panic!("wrong detail shape");
    };
    assert_eq!(*divisor, 10);
    assert_eq!(violators[0].lambda, "4,1".parse::<Partition>().unwrap());
    // 10 does not divide 4!1! = 24: the prime 5 is missing entirely
    assert_eq!(violators[0].prime, 5);
    assert_eq!(violators[0].available, 0);

    let cert = search(5, Target::TStar, &SearchOptions::default()).unwrap();
    assert_eq!(cert.outcome, SearchOutcome::None);
    assert!(cert.exhaustive);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    pass(
        10,
        elapsed,
        &format!(
            "degree 5, target T_star: divisibility violator (4,1) and exhaustive search agree \
             ({} nodes)",
            cert.nodes_explored
        ),
    );
}

#[test]
fn acceptance_11_prime_partition_identity() {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=100 {
        for p in 2..=50 {
            // the constructor evaluates the closed form and the direct sum
            // and asserts they agree
            let rp = rothaus_partition(n, p).unwrap();
            assert_eq!(rp.lambda.n(), n);
            checked += 1;
        }
    }
    pass(
        11,
        start.elapsed(),
        &format!("closed form matches direct row sums on {checked} prime partitions"),
    );
}

#[test]
fn acceptance_12_lambda_transitivity() {
    let start = Instant::now();
    // the whole group is lambda-transitive with r = prod lambda_i!
    for n in 1..=5usize {
        let group = enumerate_group(n).unwrap();
        for lambda in enumerate_partitions(n).unwrap() {
            let report = is_lambda_transitive(&group, &lambda).unwrap();
            assert!(report.is_transitive, "S_{n} should be {lambda}-transitive");
            let expected: u64 = lambda
                .parts()
                .iter()
                .map(|&p| common::factorial(p))
                .product();
            assert_eq!(report.r, Some(expected), "lambda={lambda}");
        }
    }

    // the stated counterexample for {id, (1 2)} against (2,1)
    let members = [
        Permutation::identity(3).unwrap(),
        Permutation::transposition(3, 1, 2).unwrap(),
    ];
    let lambda: Partition = "2,1".parse().unwrap();
    let report = is_lambda_transitive(&members, &lambda).unwrap();
    assert!(!report.is_transitive);
    assert!(report.counterexample.is_some());
    let p0 = OrderedSetPartition::new(3, vec![vec![1, 2], vec![3]]).unwrap();
    let p1 = OrderedSetPartition::new(3, vec![vec![1, 3], vec![2]]).unwrap();
    assert_eq!(map_count(&members, &p0, &p0), 2);
    assert_eq!(map_count(&members, &p1, &p1), 1);

    // counts match the stream length everywhere
    let mut streams = 0u64;
    for n in 1..=7usize {
        for lambda in enumerate_partitions(n).unwrap() {
            let count = count_ordered_set_partitions(n, &lambda).unwrap();
            let listed = enumerate_ordered_set_partitions(n, &lambda).unwrap();
            assert_eq!(BigUint::from(listed.len() as u64), count, "lambda={lambda}");
            streams += 1;
        }
    }
    pass(
        12,
        start.elapsed(),
        &format!(
            "group transitivity, the (2,1) counterexample, and {streams} enumeration lengths check out"
        ),
    );
}

#[test]
fn acceptance_13_brute_force_oracle_equivalence() {
    let start = Instant::now();
    // degree 3, both targets, oracle unrestricted (checks normalization too)
    for target in Target::BOTH {
        let cert = search(3, target, &SearchOptions::default()).unwrap();
        let oracle = common::brute_force_tiling(3, target, false);
        assert_eq!(
            cert.outcome == SearchOutcome::Found,
            oracle.is_some(),
            "degree 3 {target}"
        );
        assert!(cert.exhaustive);
    }
    // degree 4, T_star, oracle restricted to candidates containing id
    let cert = search(4, Target::TStar, &SearchOptions::default()).unwrap();
    let oracle = common::brute_force_tiling(4, Target::TStar, true);
    assert_eq!(cert.outcome, SearchOutcome::None);
    assert!(oracle.is_none());
    pass(
        13,
        start.elapsed(),
        "dancing-links search agrees with naive subset enumeration at degrees 3 and 4",
    );
}

#[test]
fn acceptance_14_deterministic_scan_bytes() {
    let start = Instant::now();
    let options = ScanOptions {
        with_search: true,
        search: SearchOptions {
            deterministic: true,
            ..SearchOptions::default()
        },
    };
    let run = || {
        let rows = scan(3, 6, &[Target::T, Target::TStar], &options).unwrap();
        emit_report(&rows, ReportFormat::Json)
    };
    let first = run();
    let second = run();
    assert_eq!(
        first, second,
        "deterministic scans must emit identical bytes"
    );
    assert!(first.contains("\"schema_version\":1"));
    pass(
        14,
        start.elapsed(),
        "repeated deterministic scans of 3..=6 emit byte-identical JSON",
    );
}
