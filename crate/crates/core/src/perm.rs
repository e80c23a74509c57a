//! Permutations of {1..n}: composition, inverses, cycle types, and the
//! lexicographic rank/unrank scheme that numbers the whole group.
//!
//! # Composition convention
//!
//! `compose(g, h)` applies the right factor first: the product g·h sends i to
//! g(h(i)). A tiling factorization g = x·y therefore means "first y, then x",
//! and two vertices g, h of a Cayley graph with connection set S are adjacent
//! iff h·g^(-1) lies in S. This convention is fixed once here and pinned by a
//! test; everything downstream (search, verification, transitivity) relies on
//! it. Its identifier in emitted reports is `right-factor-first`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::partition::Partition;

/// Largest degree a permutation may have.
pub const MAX_DEGREE: usize = 64;

/// Default cap for full-group enumeration (8! = 40320 elements).
pub const DEFAULT_GROUP_ENUM_MAX_N: usize = 8;

/// A permutation of {1..n}, stored as the image sequence.
///
/// Internally images are 0-based; all constructors, accessors and text forms
/// speak 1-based, matching the `2 1 3` image format.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self, Error> {
        check_degree(n)?;
        Ok(Permutation {
            images: (0..n as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based images: entry i is the image of i+1.
    pub fn from_images(images_one_based: &[usize]) -> Result<Self, Error> {
        let n = images_one_based.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in images_one_based {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} out of range 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation("not a bijection".into()));
            }
            seen[v - 1] = true;
            images.push((v - 1) as u8);
        }
        Ok(Permutation { images })
    }

    /// The transposition (a b) in S_n (1-based points).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, Error> {
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return Err(Error::InvalidPermutation(format!(
                "bad transposition ({a} {b}) for degree {n}"
            )));
        }
        let mut p = Permutation::identity(n)?;
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point i.
    pub fn image_of(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i)
    }

    /// g.compose(h) = g·h, the right factor h applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: other
                .images
                .iter()
                .map(|&v| self.images[v as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    /// Cycle lengths in weakly decreasing order, fixed points as 1's.
    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.images[i] as usize;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lengths).expect("cycle lengths form a partition")
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v as usize == i)
            .count()
    }

    pub fn is_even(&self) -> bool {
        let cycles = self.cycle_type().len();
        (self.degree() - cycles).is_multiple_of(2)
    }

    /// Lexicographic rank of the image sequence among all of S_n, starting at
    /// 0 for the identity. Requires n <= 20 so ranks fit in u64.
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        assert!(n <= 20, "rank overflows u64 past degree 20");
        let mut rank = 0u64;
        let mut fact = (1..=n.saturating_sub(1) as u64).product::<u64>().max(1);
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count() as u64;
            rank += smaller * fact;
            if n - i > 1 {
                fact /= (n - i - 1) as u64;
            }
        }
        rank
    }

    /// Inverse of [`Self::rank`]: the permutation of S_n at the given
    /// lexicographic index.
    pub fn unrank(n: usize, mut rank: u64) -> Result<Permutation, Error> {
        check_degree(n)?;
        if n > 20 {
            return Err(Error::BoundExceeded {
                quantity: "degree for permutation ranking",
                value: n as u64,
                bound: 20,
            });
        }
        let total: u64 = (1..=n as u64).product();
        if rank >= total {
            return Err(Error::InvalidInput(format!(
                "rank {rank} out of range for S_{n}"
            )));
        }
        let mut remaining: Vec<u8> = (0..n as u8).collect();
        let mut fact = total / n as u64;
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let d = (rank / fact) as usize;
            rank %= fact;
            images.push(remaining.remove(d));
            if n - i > 1 {
                fact /= (n - i - 1) as u64;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses either the image form `2 1 3` or the cycle form `(1 2)(3 4)`.
    /// The cycle form needs the degree, which the text does not carry.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Permutation, Error> {
        let text = text.trim();
        if text.starts_with('(') {
            let n =
                degree.ok_or_else(|| Error::Parse("cycle form needs an explicit degree".into()))?;
            Self::parse_cycles(text, n)
        } else {
            let p = Self::parse_images(text)?;
            if let Some(n) = degree {
                if p.degree() != n {
                    return Err(Error::DegreeMismatch(p.degree(), n));
                }
            }
            Ok(p)
        }
    }

    /// Parses the canonical image form `2 1 3`.
    pub fn parse_images(text: &str) -> Result<Permutation, Error> {
        let images: Vec<usize> = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid image {tok:?}")))
            })
            .collect::<Result<_, _>>()?;
        if images.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Permutation::from_images(&images)
    }

    fn parse_cycles(text: &str, n: usize) -> Result<Permutation, Error> {
        let mut p = Permutation::identity(n)?;
        let body = text.replace(char::is_whitespace, " ");
        let mut rest = body.trim();
        // "()" denotes the identity
        if rest == "()" {
            return Ok(p);
        }
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Parse(format!("stray text in {text:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced '(' in {text:?}")))?;
            let cycle: Vec<usize> = rest[open + 1..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("invalid point {tok:?}")))
                })
                .collect::<Result<_, _>>()?;
            if cycle.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::Parse(format!("point out of 1..={n} in {text:?}")));
            }
            // cycle (a b c): a -> b -> c -> a, composed left-to-right as
            // disjoint cycles (order irrelevant when disjoint)
            let mut seen = std::collections::HashSet::new();
            for &v in &cycle {
                if !seen.insert(v) {
                    return Err(Error::Parse(format!("repeated point {v} in {text:?}")));
                }
            }
            for w in cycle.windows(2) {
                if p.images[w[0] - 1] as usize != w[0] - 1 {
                    return Err(Error::Parse(format!("cycles not disjoint in {text:?}")));
                }
                p.images[w[0] - 1] = (w[1] - 1) as u8;
            }
            if cycle.len() > 1 {
                let last = cycle[cycle.len() - 1];
                if p.images[last - 1] as usize != last - 1 {
                    return Err(Error::Parse(format!("cycles not disjoint in {text:?}")));
                }
                p.images[last - 1] = (cycle[0] - 1) as u8;
            }
            rest = rest[close + 1..].trim();
        }
        Ok(p)
    }

    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(i + 1).to_string());
                first = false;
                i = self.images[i] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn check_degree(n: usize) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::InvalidPermutation("degree must be positive".into()));
    }
    if n > MAX_DEGREE {
        return Err(Error::BoundExceeded {
            quantity: "permutation degree",
            value: n as u64,
            bound: MAX_DEGREE as u64,
        });
    }
    Ok(())
}

/// Unchecked product for internal hot paths; panics on degree mismatch.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in product");
        Permutation {
            images: rhs
                .images
                .iter()
                .map(|&v| self.images[v as usize])
                .collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self.cycle_string())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Permutation::parse_images(&text).map_err(serde::de::Error::custom)
    }
}

/// All n! permutations of degree n in lexicographic order of image sequences.
/// The identity has index 0 and indexes agree with [`Permutation::rank`].
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>, Error> {
    enumerate_group_bounded(n, DEFAULT_GROUP_ENUM_MAX_N)
}

/// [`enumerate_group`] with an explicit cap replacing the default of 8.
pub fn enumerate_group_bounded(n: usize, max_n: usize) -> Result<Vec<Permutation>, Error> {
    check_degree(n)?;
    if n > max_n {
        return Err(Error::BoundExceeded {
            quantity: "degree for group enumeration",
            value: n as u64,
            bound: max_n as u64,
        });
    }
    let total: u64 = (1..=n as u64).product();
    (0..total).map(|r| Permutation::unrank(n, r)).collect()
}
