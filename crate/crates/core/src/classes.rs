//! Conjugacy-class machinery for S_n: class sizes, the generator sets T_n
//! (identity plus all transpositions) and T_n* (transpositions only), their
//! product squares, and normal connection sets described by cycle types.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::factorial_big;
use crate::error::Error;
use crate::partition::Partition;
use crate::perm::{enumerate_group_bounded, Permutation};

/// Which tiling set is under discussion: T_n or T_n*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "tn")]
    T,
    #[serde(rename = "tnstar")]
    TStar,
}

impl Target {
    pub const BOTH: [Target; 2] = [Target::T, Target::TStar];

    /// |T_n| = 1 + n(n-1)/2 or |T_n*| = n(n-1)/2.
    pub fn set_size(self, n: usize) -> u64 {
        let n = n as u64;
        let transpositions = n * (n - 1) / 2;
        match self {
            Target::T => 1 + transpositions,
            Target::TStar => transpositions,
        }
    }

    /// Token used on the first line of witness files.
    pub fn file_token(self) -> &'static str {
        match self {
            Target::T => "TN",
            Target::TStar => "TNSTAR",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::T => write!(f, "tn"),
            Target::TStar => write!(f, "tnstar"),
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "tn" | "t" => Ok(Target::T),
            "tnstar" | "tn*" | "tstar" | "t*" => Ok(Target::TStar),
            other => Err(Error::Parse(format!(
                "unknown target {other:?}, expected tn or tnstar"
            ))),
        }
    }
}

/// A normal subset of S_n: a union of conjugacy classes given by cycle type,
/// with optional inclusion of the identity.
///
/// The identity class (1^n) is always carried by the `include_identity` flag,
/// never stored among the cycle types, so sizes and memberships never double
/// count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSet {
    n: usize,
    cycle_types: BTreeSet<Partition>,
    include_identity: bool,
}

impl ClassSet {
    pub fn new(
        n: usize,
        cycle_types: impl IntoIterator<Item = Partition>,
        include_identity: bool,
    ) -> Result<Self, Error> {
        let identity_type = Partition::column(n)?;
        let mut set = BTreeSet::new();
        let mut include_identity = include_identity;
        for ct in cycle_types {
            if ct.n() != n {
                return Err(Error::InvalidInput(format!(
                    "cycle type {ct} is not a partition of {n}"
                )));
            }
            if ct == identity_type {
                include_identity = true;
            } else {
                set.insert(ct);
            }
        }
        Ok(ClassSet {
            n,
            cycle_types: set,
            include_identity,
        })
    }

    /// T_n as a class set: {id} plus the transposition class.
    pub fn t_n(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("T_{n} needs n >= 2")));
        }
        ClassSet::new(n, [transposition_type(n)?], true)
    }

    /// T_n* as a class set: the transposition class alone.
    pub fn t_n_star(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("T_{n}* needs n >= 2")));
        }
        ClassSet::new(n, [transposition_type(n)?], false)
    }

    pub fn for_target(n: usize, target: Target) -> Result<Self, Error> {
        match target {
            Target::T => ClassSet::t_n(n),
            Target::TStar => ClassSet::t_n_star(n),
        }
    }

    /// T_n^2 \ {id}: transpositions, 3-cycles and double transpositions
    /// (whichever of those classes exist at this degree).
    pub fn square_t(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("T_{n}^2 needs n >= 2")));
        }
        let mut types = vec![transposition_type(n)?];
        types.extend(three_cycle_type(n));
        types.extend(double_transposition_type(n));
        ClassSet::new(n, types, false)
    }

    /// (T_n*)^2 \ {id}: 3-cycles and double transpositions (whichever exist).
    pub fn square_t_star(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("(T_{n}*)^2 needs n >= 2")));
        }
        let mut types = Vec::new();
        types.extend(three_cycle_type(n));
        types.extend(double_transposition_type(n));
        if types.is_empty() {
            // (T_2*)^2 \ {id} is empty; keep the set well-formed
            return ClassSet::new(n, [], false);
        }
        ClassSet::new(n, types, false)
    }

    /// Connection set of the Cayley graph whose independent sets of the right
    /// size are exactly the tilings by the target set.
    pub fn square_connection(n: usize, target: Target) -> Result<Self, Error> {
        match target {
            Target::T => ClassSet::square_t(n),
            Target::TStar => ClassSet::square_t_star(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn include_identity(&self) -> bool {
        self.include_identity
    }

    /// Non-identity cycle types, ascending by part sequence.
    pub fn cycle_types(&self) -> impl Iterator<Item = &Partition> {
        self.cycle_types.iter()
    }

    /// Membership depends only on the cycle type.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.n {
            return false;
        }
        if p.is_identity() {
            return self.include_identity;
        }
        self.cycle_types.contains(&p.cycle_type())
    }

    /// Exact number of elements.
    pub fn size(&self) -> BigUint {
        let mut total = if self.include_identity {
            BigUint::one()
        } else {
            BigUint::from(0u8)
        };
        for ct in &self.cycle_types {
            total += class_size(ct);
        }
        total
    }

    /// All members, in group enumeration order. Bounded like
    /// [`enumerate_group_bounded`].
    pub fn members(&self, max_n: usize) -> Result<Vec<Permutation>, Error> {
        let group = enumerate_group_bounded(self.n, max_n)?;
        Ok(group.into_iter().filter(|g| self.contains(g)).collect())
    }

    /// Labels for reports: `id` first when present, then cycle types in
    /// partition enumeration order (largest first).
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.include_identity {
            out.push("id".to_string());
        }
        out.extend(self.cycle_types.iter().rev().map(|ct| ct.to_string()));
        out
    }
}

fn transposition_type(n: usize) -> Result<Partition, Error> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "no transposition class in S_{n}"
        )));
    }
    let mut parts = vec![2];
    parts.extend(std::iter::repeat_n(1, n - 2));
    Ok(Partition::new(parts).expect("valid cycle type"))
}

fn three_cycle_type(n: usize) -> Option<Partition> {
    if n < 3 {
        return None;
    }
    let mut parts = vec![3];
    parts.extend(std::iter::repeat_n(1, n - 3));
    Some(Partition::new(parts).expect("valid cycle type"))
}

fn double_transposition_type(n: usize) -> Option<Partition> {
    if n < 4 {
        return None;
    }
    let mut parts = vec![2, 2];
    parts.extend(std::iter::repeat_n(1, n - 4));
    Some(Partition::new(parts).expect("valid cycle type"))
}

/// |C_mu| = n! / prod_j (m_j! j^(m_j)) where m_j is the multiplicity of the
/// part j in mu.
pub fn class_size(mu: &Partition) -> BigUint {
    let mut denominator = BigUint::one();
    let mut run = 0usize;
    let mut prev = 0usize;
    for &p in mu.parts().iter().chain(std::iter::once(&0)) {
        if p == prev {
            run += 1;
        } else {
            if prev > 0 {
                denominator *= factorial_big(run);
                denominator *= BigUint::from(prev).pow(run as u32);
            }
            prev = p;
            run = 1;
        }
    }
    factorial_big(mu.n()) / denominator
}

/// The generator set as explicit permutations: T_n (identity plus all
/// transpositions) or T_n* (all transpositions), sorted by rank.
pub fn generator_set(n: usize, target: Target) -> Result<Vec<Permutation>, Error> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "generator sets need n >= 2, got {n}"
        )));
    }
    let mut out = Vec::new();
    if target == Target::T {
        out.push(Permutation::identity(n)?);
    }
    for a in 1..=n {
        for b in (a + 1)..=n {
            out.push(Permutation::transposition(n, a, b)?);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// The set {s·t : s, t in S} of all pairwise products, sorted and deduplicated.
pub fn product_square(set: &[Permutation]) -> Result<Vec<Permutation>, Error> {
    if let Some(first) = set.first() {
        let n = first.degree();
        if let Some(other) = set.iter().find(|p| p.degree() != n) {
            return Err(Error::DegreeMismatch(n, other.degree()));
        }
    }
    let mut products = BTreeSet::new();
    for a in set {
        for b in set {
            products.insert(a * b);
        }
    }
    Ok(products.into_iter().collect())
}
