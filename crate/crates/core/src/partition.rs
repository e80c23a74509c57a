//! Integer partitions of n and their Young-diagram data: box contents,
//! conjugation, dominance order, hook-length dimensions.
//!
//! Partitions are immutable value objects. The multiplicity shorthand
//! `2^2,1^2` is accepted on parse but partitions are always stored expanded,
//! so equality and hashing are plain part-by-part comparisons.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::factorial_big;
use crate::error::Error;

/// Largest n supported by partition enumeration and hook products.
pub const MAX_PARTITION_N: usize = 64;

/// A partition of n: weakly decreasing positive parts summing to n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

/// One box of a Young diagram with its content `col - row` (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxContent {
    pub row: usize,
    pub col: usize,
    pub content: i64,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// The single-row partition (n).
    pub fn row(n: usize) -> Result<Self, Error> {
        Partition::new(vec![n])
    }

    /// The single-column partition (1^n).
    pub fn column(n: usize) -> Result<Self, Error> {
        Partition::new(vec![1; n])
    }

    /// The hook partition (n-k, 1^k).
    pub fn hook(n: usize, k: usize) -> Result<Self, Error> {
        if k + 1 > n {
            return Err(Error::InvalidPartition(format!(
                "hook leg {k} too long for n={n}"
            )));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts (rows of the diagram), always at least one.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// The i-th part (0-based), reading 0 past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// All boxes of the Young diagram, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = BoxContent> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &len)| {
            (1..=len).map(move |col| BoxContent {
                row: i + 1,
                col,
                content: col as i64 - (i as i64 + 1),
            })
        })
    }

    /// Content sum over the diagram, by the closed form
    /// sum_i lambda_i (lambda_i - 2i + 1) / 2.
    ///
    /// The box-by-box sum is reserved for test oracles; see [`Self::boxes`].
    pub fn content_sum(&self) -> i64 {
        debug_assert_eq!(self.weighted_row_sum() % 2, 0);
        self.weighted_row_sum() / 2
    }

    /// sum_i lambda_i (lambda_i - 2i + 1), i.e. twice the content sum.
    pub fn weighted_row_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                let i = i as i64 + 1;
                p * (p - 2 * i + 1)
            })
            .sum()
    }

    /// Sum of squared contents over the diagram.
    pub fn content_square_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                // row i+1 has contents (1 - (i+1)) ..= (p - (i+1))
                let lo = -(i as i64);
                let hi = p as i64 - (i as i64 + 1);
                sum_of_squares_range(lo, hi)
            })
            .sum()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts: Vec<usize> = (1..=cols)
            .map(|k| self.parts.iter().take_while(|&&p| p >= k).count())
            .collect();
        let n = self.n;
        Partition { parts, n }
    }

    /// Dominance order: `self` dominates `other` iff every prefix sum of
    /// `self` is at least the matching prefix sum of `other`. Both must be
    /// partitions of the same n.
    pub fn dominates(&self, other: &Partition) -> Result<bool, Error> {
        if self.n != other.n {
            return Err(Error::WeightMismatch(self.n, other.n));
        }
        let rows = self.parts.len().max(other.parts.len());
        let mut mine = 0usize;
        let mut theirs = 0usize;
        for i in 0..rows {
            mine += self.part(i);
            theirs += other.part(i);
            if mine < theirs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the partition has the shape (2^k, 1^(n-2k)), i.e. at most two
    /// columns. For n >= 3 this is the same as not dominating (3, 1^(n-3)).
    pub fn is_two_column_hookless(&self) -> bool {
        self.parts[0] <= 2
    }

    /// Number of standard Young tableaux of this shape, via exact hook
    /// products. Guarded at n <= [`MAX_PARTITION_N`].
    pub fn dimension(&self) -> Result<BigUint, Error> {
        if self.n > MAX_PARTITION_N {
            return Err(Error::BoundExceeded {
                quantity: "partition weight for hook products",
                value: self.n as u64,
                bound: MAX_PARTITION_N as u64,
            });
        }
        let conj = self.conjugate();
        let mut hooks = BigUint::from(1u8);
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                let arm = p - j;
                let leg = conj.part(j - 1) - (i + 1);
                hooks *= BigUint::from(arm + leg + 1);
            }
        }
        let numerator = factorial_big(self.n);
        debug_assert!((&numerator % &hooks) == BigUint::from(0u8));
        Ok(numerator / hooks)
    }
}

/// sum of m^2 for m in lo..=hi (lo <= hi), in closed form.
fn sum_of_squares_range(lo: i64, hi: i64) -> i64 {
    // pyramid(t) = 1^2 + ... + t^2, empty for t <= 0
    fn pyramid(t: i64) -> i64 {
        if t <= 0 {
            return 0;
        }
        t * (t + 1) * (2 * t + 1) / 6
    }
    debug_assert!(lo <= hi);
    if lo >= 0 {
        pyramid(hi) - pyramid(lo - 1)
    } else if hi <= 0 {
        pyramid(-lo) - pyramid(-hi - 1)
    } else {
        pyramid(-lo) + pyramid(hi)
    }
}

/// All partitions of n, in reverse-lexicographic order starting at (n).
///
/// The order is deterministic and shared by every table in the crate:
/// (4), (3,1), (2,2), (2,1,1), (1,1,1,1).
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>, Error> {
    Ok(partitions_of(n)?.collect())
}

/// Streaming form of [`enumerate_partitions`].
pub fn partitions_of(n: usize) -> Result<PartitionIter, Error> {
    if n == 0 || n > MAX_PARTITION_N {
        return Err(Error::BoundExceeded {
            quantity: "partition weight for enumeration",
            value: n as u64,
            bound: MAX_PARTITION_N as u64,
        });
    }
    Ok(PartitionIter {
        next: Some(vec![n]),
        n,
    })
}

pub struct PartitionIter {
    next: Option<Vec<usize>>,
    n: usize,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // Successor in reverse-lexicographic order: decrement the rightmost
        // part exceeding 1 and redistribute everything to its right greedily.
        let mut succ = None;
        if let Some(i) = current.iter().rposition(|&p| p > 1) {
            let mut parts = current[..i].to_vec();
            let value = current[i] - 1;
            let mut remaining = current[i..].iter().sum::<usize>();
            while remaining >= value {
                parts.push(value);
                remaining -= value;
            }
            if remaining > 0 {
                parts.push(remaining);
            }
            succ = Some(parts);
        }
        let item = Partition {
            parts: current,
            n: self.n,
        };
        self.next = succ;
        Some(item)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts comma-separated parts with optional caret multiplicities:
    /// `4,2`, `2^2,1^2`, whitespace ignored, case-insensitive.
    fn from_str(s: &str) -> Result<Self, Error> {
        let cleaned: String = s.to_ascii_lowercase().split_whitespace().collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty partition".into()));
        }
        let mut parts = Vec::new();
        for token in cleaned.split(',') {
            let (base, mult) = match token.split_once('^') {
                Some((b, m)) => (b, m),
                None => (token, "1"),
            };
            let part: usize = base
                .parse()
                .map_err(|_| Error::Parse(format!("invalid part {token:?}")))?;
            let mult: usize = mult
                .parse()
                .map_err(|_| Error::Parse(format!("invalid multiplicity in {token:?}")))?;
            if mult == 0 {
                return Err(Error::Parse(format!("zero multiplicity in {token:?}")));
            }
            parts.extend(std::iter::repeat_n(part, mult));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
