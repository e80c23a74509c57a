//! Ordered set partitions and partition-transitivity of permutation sets.
//!
//! An ordered set partition of shape lambda is a tuple of disjoint blocks of
//! sizes lambda_1 >= ... >= lambda_l covering {1..n}; equal-sized blocks in
//! different positions count as different tuples. A set Y is
//! lambda-transitive when every ordered pair (P, Q) of shape-lambda set
//! partitions is connected by exactly r members of Y, necessarily with
//! r = |Y| * prod lambda_i! / n!.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::factorial_big;
use crate::error::Error;
use crate::partition::Partition;
use crate::perm::Permutation;

/// Cap on n! / prod lambda_i!, the number of ordered set partitions that
/// enumeration and transitivity checks will materialize.
pub const MAX_ORDERED_SET_PARTITIONS: u64 = 20_160;

/// Blocks stored as bitmasks over the points 0..n-1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    n: usize,
    blocks: Vec<u32>,
}

impl OrderedSetPartition {
    /// Builds from explicit 1-based blocks, validating shape and coverage.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, Error> {
        if n == 0 || n > 32 {
            return Err(Error::InvalidInput(format!(
                "ordered set partitions support 1 <= n <= 32, got {n}"
            )));
        }
        let mut masks = Vec::with_capacity(blocks.len());
        let mut union = 0u32;
        let mut prev_size = usize::MAX;
        for block in &blocks {
            if block.is_empty() || block.len() > prev_size {
                return Err(Error::InvalidInput(
                    "block sizes must be positive and weakly decreasing".into(),
                ));
            }
            prev_size = block.len();
            let mut mask = 0u32;
            for &point in block {
                if point == 0 || point > n {
                    return Err(Error::InvalidInput(format!("point {point} out of 1..={n}")));
                }
                mask |= 1 << (point - 1);
            }
            if mask.count_ones() as usize != block.len() || union & mask != 0 {
                return Err(Error::InvalidInput("blocks are not disjoint".into()));
            }
            union |= mask;
            masks.push(mask);
        }
        if union.count_ones() as usize != n {
            return Err(Error::InvalidInput(format!("blocks do not cover 1..={n}")));
        }
        Ok(OrderedSetPartition { n, blocks: masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> Partition {
        let sizes: Vec<usize> = self
            .blocks
            .iter()
            .map(|b| b.count_ones() as usize)
            .collect();
        Partition::new(sizes).expect("block sizes form a partition")
    }

    /// Blocks as sorted 1-based point lists.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|&mask| {
                (1..=self.n)
                    .filter(|&i| mask & (1 << (i - 1)) != 0)
                    .collect()
            })
            .collect()
    }

    /// The image partition y(P): each block mapped pointwise through y.
    pub fn apply(&self, y: &Permutation) -> OrderedSetPartition {
        debug_assert_eq!(y.degree(), self.n);
        let blocks = self
            .blocks
            .iter()
            .map(|&mask| {
                let mut image = 0u32;
                let mut bits = mask;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    image |= 1 << (y.image_of(i + 1) - 1);
                }
                image
            })
            .collect();
        OrderedSetPartition { n: self.n, blocks }
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, point) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{point}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// n! / prod_i lambda_i!, the number of ordered set partitions of shape
/// lambda.
pub fn count_ordered_set_partitions(n: usize, lambda: &Partition) -> Result<BigUint, Error> {
    if lambda.n() != n {
        return Err(Error::WeightMismatch(lambda.n(), n));
    }
    let mut denominator = BigUint::from(1u8);
    for &part in lambda.parts() {
        denominator *= factorial_big(part);
    }
    Ok(factorial_big(n) / denominator)
}

/// All ordered set partitions of shape lambda, in a fixed order: block
/// contents are chosen as lexicographic combinations of the available
/// points, outermost block first.
pub fn enumerate_ordered_set_partitions(
    n: usize,
    lambda: &Partition,
) -> Result<Vec<OrderedSetPartition>, Error> {
    let total = count_ordered_set_partitions(n, lambda)?;
    let capacity = total
        .to_u64()
        .filter(|&t| t <= MAX_ORDERED_SET_PARTITIONS)
        .ok_or(Error::BoundExceeded {
            quantity: "ordered set partitions",
            value: total.to_u64().unwrap_or(u64::MAX),
            bound: MAX_ORDERED_SET_PARTITIONS,
        })?;
    if n > 32 {
        return Err(Error::BoundExceeded {
            quantity: "degree for ordered set partitions",
            value: n as u64,
            bound: 32,
        });
    }
    let mut out = Vec::with_capacity(capacity as usize);
    let mut acc = Vec::with_capacity(lambda.len());
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    fill_blocks(n, lambda.parts(), full, &mut acc, &mut out);
    debug_assert_eq!(out.len() as u64, capacity);
    Ok(out)
}

fn fill_blocks(
    n: usize,
    shape: &[usize],
    free: u32,
    acc: &mut Vec<u32>,
    out: &mut Vec<OrderedSetPartition>,
) {
    let Some((&size, rest)) = shape.split_first() else {
        out.push(OrderedSetPartition {
            n,
            blocks: acc.clone(),
        });
        return;
    };
    let points: Vec<u32> = (0..32).filter(|&i| free & (1 << i) != 0).collect();
    combinations(&points, size, &mut Vec::new(), &mut |chosen| {
        let mask = chosen.iter().fold(0u32, |m, &i| m | (1 << i));
        acc.push(mask);
        fill_blocks(n, rest, free & !mask, acc, out);
        acc.pop();
    });
}

fn combinations(points: &[u32], k: usize, prefix: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if k == 0 {
        visit(prefix);
        return;
    }
    if points.len() < k {
        return;
    }
    for (i, &p) in points.iter().enumerate() {
        if points.len() - i < k {
            break;
        }
        prefix.push(p);
        combinations(&points[i + 1..], k - 1, prefix, visit);
        prefix.pop();
    }
}

/// Number of members sending P to Q blockwise.
pub fn map_count(
    members: &[Permutation],
    p: &OrderedSetPartition,
    q: &OrderedSetPartition,
) -> usize {
    members.iter().filter(|y| &p.apply(y) == q).count()
}

/// Verdict of a lambda-transitivity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub lambda: Partition,
    pub is_transitive: bool,
    /// The constant count when transitive; always |Y| prod lambda_i! / n!.
    pub r: Option<u64>,
    pub counterexample: Option<TransitivityCounterexample>,
}

/// Two (P, Q) pairs whose member counts differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityCounterexample {
    pub first: (OrderedSetPartition, OrderedSetPartition, u64),
    pub second: (OrderedSetPartition, OrderedSetPartition, u64),
}

/// Full all-pairs check of the definition: counts members over every ordered
/// pair of shape-lambda set partitions and requires a constant count r >= 1.
pub fn is_lambda_transitive(
    members: &[Permutation],
    lambda: &Partition,
) -> Result<TransitivityReport, Error> {
    let n = lambda.n();
    for m in members {
        if m.degree() != n {
            return Err(Error::DegreeMismatch(m.degree(), n));
        }
    }
    let osps = enumerate_ordered_set_partitions(n, lambda)?;
    let total = osps.len();
    let index: HashMap<&OrderedSetPartition, usize> =
        osps.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // sparse (P index, Q index) -> count, grouped by P for the zero hunt
    let mut counts: Vec<HashMap<usize, u64>> = vec![HashMap::new(); total];
    for y in members {
        for (pi, p) in osps.iter().enumerate() {
            let q = p.apply(y);
            let qi = *index.get(&q).expect("image is a valid set partition");
            *counts[pi].entry(qi).or_insert(0) += 1;
        }
    }

    let not_transitive = |counterexample| TransitivityReport {
        lambda: lambda.clone(),
        is_transitive: false,
        r: None,
        counterexample,
    };

    if members.is_empty() {
        // every count is zero; transitivity demands a positive constant
        return Ok(not_transitive(None));
    }

    // find two observed entries with different counts, or an observed entry
    // plus an unreached pair
    let mut first_seen: Option<(usize, usize, u64)> = None;
    for (pi, row) in counts.iter().enumerate() {
        let mut row_entries: Vec<(usize, u64)> = row.iter().map(|(&q, &c)| (q, c)).collect();
        row_entries.sort_unstable();
        for (qi, count) in row_entries {
            match first_seen {
                None => first_seen = Some((pi, qi, count)),
                Some((fp, fq, fc)) if fc != count => {
                    return Ok(not_transitive(Some(TransitivityCounterexample {
                        first: (osps[fp].clone(), osps[fq].clone(), fc),
                        second: (osps[pi].clone(), osps[qi].clone(), count),
                    })));
                }
                Some(_) => {}
            }
        }
    }
    let (fp, fq, constant) = first_seen.expect("nonempty members reach some pair");
    if let Some((pi, qi)) = first_missing_pair(&counts, total) {
        return Ok(not_transitive(Some(TransitivityCounterexample {
            first: (osps[fp].clone(), osps[fq].clone(), constant),
            second: (osps[pi].clone(), osps[qi].clone(), 0),
        })));
    }

    // transitive; r must equal |Y| prod lambda_i! / n!, i.e. |Y| / total
    assert_eq!(
        constant as u128 * total as u128,
        members.len() as u128,
        "transitive count does not match |Y| prod lambda_i! / n!"
    );
    Ok(TransitivityReport {
        lambda: lambda.clone(),
        is_transitive: true,
        r: Some(constant),
        counterexample: None,
    })
}

fn first_missing_pair(counts: &[HashMap<usize, u64>], total: usize) -> Option<(usize, usize)> {
    for (pi, row) in counts.iter().enumerate() {
        if row.len() < total {
            let qi = (0..total).find(|q| !row.contains_key(q))?;
            return Some((pi, qi));
        }
    }
    None
}
