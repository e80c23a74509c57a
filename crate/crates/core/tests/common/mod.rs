//! Oracles shared by the integration suites. Everything here is independent
//! of the implementation paths it checks: partition counts come from the
//! pentagonal-number recurrence, content sums from explicit box enumeration,
//! tilings from naive subset enumeration, and spectra from a floating-point
//! eigensolver on the explicit adjacency matrix.
#![allow(dead_code)] // each integration suite uses its own slice of these

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use sn_tiler_core::central::SpectrumTable;
use sn_tiler_core::classes::{ClassSet, Target};
use sn_tiler_core::partition::Partition;
use sn_tiler_core::perm::{enumerate_group, Permutation};
use sn_tiler_core::search::{verify_tiling, TilingWitness};

pub fn factorial(n: usize) -> u64 {
    (2..=n as u64).product::<u64>().max(1)
}

/// p(n) by Euler's pentagonal-number recurrence.
pub fn partition_count_oracle(n: usize) -> u64 {
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for m in 1..=n {
        let mut total: i64 = 0;
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * table[m - g1] as i64;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                total += sign * table[m - g2] as i64;
            }
            k += 1;
        }
        table[m] = total as u64;
    }
    table[n]
}

/// Content sum straight off the Young diagram.
pub fn content_sum_by_boxes(lambda: &Partition) -> i64 {
    lambda.boxes().map(|b| b.content).sum()
}

/// Exhaustive tiling search by enumerating candidate subsets of the required
/// size and verifying each one. `require_identity` restricts to normalized
/// candidates.
pub fn brute_force_tiling(
    n: usize,
    target: Target,
    require_identity: bool,
) -> Option<TilingWitness> {
    let size = TilingWitness::required_size(n, target)? as usize;
    let group = enumerate_group(n).unwrap();
    let (base, pool, choose): (Vec<Permutation>, &[Permutation], usize) = if require_identity {
        (vec![group[0].clone()], &group[1..], size - 1)
    } else {
        (Vec::new(), &group[..], size)
    };
    let mut winner = None;
    let mut acc = base;
    choose_combinations(pool, choose, &mut acc, &mut |candidate| {
        let witness = TilingWitness::new(n, target, candidate.to_vec()).unwrap();
        if verify_tiling(&witness).unwrap().valid {
            winner = Some(witness);
            true
        } else {
            false
        }
    });
    winner
}

/// Visits `base ++ combination` for every k-combination of `pool`, stopping
/// when the visitor returns true.
fn choose_combinations(
    pool: &[Permutation],
    k: usize,
    acc: &mut Vec<Permutation>,
    visit: &mut impl FnMut(&[Permutation]) -> bool,
) -> bool {
    if k == 0 {
        return visit(acc);
    }
    for i in 0..pool.len() {
        if pool.len() - i < k {
            break;
        }
        acc.push(pool[i].clone());
        if choose_combinations(&pool[i + 1..], k - 1, acc, visit) {
            return true;
        }
        acc.pop();
    }
    false
}

/// Sorted eigenvalues of the explicit |S_n| x |S_n| adjacency matrix of
/// Cay(S_n, connection), arcs (g, h) iff h g^(-1) in the connection.
pub fn numeric_eigenvalues(connection: &ClassSet) -> Vec<f64> {
    let group = enumerate_group(connection.n()).unwrap();
    let m = group.len();
    let mut adjacency = nalgebra::DMatrix::<f64>::zeros(m, m);
    for (i, g) in group.iter().enumerate() {
        let g_inv = g.inverse();
        for (j, h) in group.iter().enumerate() {
            if connection.contains(&(h * &g_inv)) {
                adjacency[(i, j)] = 1.0;
            }
        }
    }
    let mut values: Vec<f64> = nalgebra::SymmetricEigen::new(adjacency)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Checks the exact (eigenvalue, multiplicity) multiset against a numeric
/// eigenvalue list within an absolute tolerance. Exact eigenvalues for the
/// supported classes are integers, so tolerance windows never overlap.
pub fn spectra_match(table: &SpectrumTable, numeric: &[f64], tolerance: f64) {
    let mut by_value: BTreeMap<String, (f64, u64)> = BTreeMap::new();
    for row in &table.rows {
        let value = row.eigenvalue.to_f64().unwrap();
        let entry = by_value
            .entry(sn_tiler_core::ratio::format_rational(&row.eigenvalue))
            .or_insert((value, 0));
        entry.1 += row.multiplicity;
    }
    let total: u64 = by_value.values().map(|&(_, m)| m).sum();
    assert_eq!(
        total as usize,
        numeric.len(),
        "multiplicities must fill the group order"
    );
    for (label, (value, multiplicity)) in by_value {
        let count = numeric
            .iter()
            .filter(|&&x| (x - value).abs() <= tolerance)
            .count() as u64;
        assert_eq!(
            count, multiplicity,
            "eigenvalue {label} expected multiplicity {multiplicity}, numeric count {count}"
        );
    }
}
