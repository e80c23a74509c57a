//! Central characters for the transposition, 3-cycle and double-transposition
//! classes, exact spectra of normal Cayley graphs on S_n built from those
//! classes, and the weighted Hoffman density bound.
//!
//! For a class C_mu and an irreducible indexed by lambda, the central
//! character |C_mu| chi(mu) / chi(id) is what the class contributes to the
//! Cayley-graph eigenvalue at lambda. For the three classes handled here the
//! values are polynomial in the box contents of lambda:
//!
//! ```text
//! omega_2  = S1
//! omega_3  = S2 - n(n-1)/2
//! omega_22 = S1^2/2 - 3 S2/2 + n(n-1)/2
//! ```
//!
//! with S1 the content sum and S2 the content square sum. Everything is exact
//! rational arithmetic; the only floating point in the crate lives in the
//! test-only eigensolver oracle that cross-checks these tables.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::classes::{class_size, ClassSet, Target};
use crate::error::Error;
use crate::partition::{enumerate_partitions, Partition};
use crate::ratio::{format_rational, is_integer, rational_int, Rational};

/// Largest degree for which spectra are tabulated (multiplicities are squared
/// dimensions and must fit in u64).
pub const SPECTRUM_MAX_N: usize = 20;

/// The conjugacy classes whose central characters have closed content forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Transposition,
    ThreeCycle,
    DoubleTransposition,
}

impl ClassKind {
    pub fn min_degree(self) -> usize {
        match self {
            ClassKind::Transposition => 2,
            ClassKind::ThreeCycle => 3,
            ClassKind::DoubleTransposition => 4,
        }
    }

    /// The cycle type of the class inside S_n.
    pub fn cycle_type(self, n: usize) -> Result<Partition, Error> {
        if n < self.min_degree() {
            return Err(Error::InvalidInput(format!(
                "{self:?} class requires n >= {}, got {n}",
                self.min_degree()
            )));
        }
        let mut parts = match self {
            ClassKind::Transposition => vec![2],
            ClassKind::ThreeCycle => vec![3],
            ClassKind::DoubleTransposition => vec![2, 2],
        };
        let used: usize = parts.iter().sum();
        parts.extend(std::iter::repeat_n(1, n - used));
        Ok(Partition::new(parts).expect("valid cycle type"))
    }

    /// Matches a cycle type against the supported classes.
    pub fn from_cycle_type(ct: &Partition) -> Option<ClassKind> {
        let n = ct.n();
        [
            ClassKind::Transposition,
            ClassKind::ThreeCycle,
            ClassKind::DoubleTransposition,
        ]
        .into_iter()
        .find(|&kind| n >= kind.min_degree() && kind.cycle_type(n).ok().as_ref() == Some(ct))
    }
}

/// Exact central character of the given class at the irreducible lambda.
pub fn central_character(lambda: &Partition, kind: ClassKind) -> Result<Rational, Error> {
    let n = lambda.n();
    if n < kind.min_degree() {
        return Err(Error::InvalidInput(format!(
            "{kind:?} class requires n >= {}, got {n}",
            kind.min_degree()
        )));
    }
    let s1 = rational_int(lambda.content_sum());
    let s2 = rational_int(lambda.content_square_sum());
    let pairs = rational_int((n as i64) * (n as i64 - 1) / 2);
    let value = match kind {
        ClassKind::Transposition => s1,
        ClassKind::ThreeCycle => s2 - pairs,
        ClassKind::DoubleTransposition => {
            let half = Rational::new(BigInt::from(1), BigInt::from(2));
            let three_halves = Rational::new(BigInt::from(3), BigInt::from(2));
            half * &s1 * &s1 - three_halves * s2 + pairs
        }
    };
    Ok(value)
}

/// The three central characters of one irreducible, n >= 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharacterRow {
    pub lambda: Partition,
    pub n: usize,
    pub omega2: i64,
    pub omega3: i64,
    pub omega22: Rational,
}

impl CentralCharacterRow {
    pub fn new(lambda: Partition) -> Result<Self, Error> {
        let n = lambda.n();
        if n < 4 {
            return Err(Error::InvalidInput(format!(
                "central character rows need n >= 4, got {n}"
            )));
        }
        let omega2 = lambda.content_sum();
        let omega3 = lambda.content_square_sum() - (n as i64) * (n as i64 - 1) / 2;
        let omega22 = central_character(&lambda, ClassKind::DoubleTransposition)?;
        // omega22 is an integer for every lambda even though the formula has
        // halves in it
        assert!(is_integer(&omega22), "omega22 not integral at {lambda}");
        Ok(CentralCharacterRow {
            lambda,
            n,
            omega2,
            omega3,
            omega22,
        })
    }
}

/// One eigenvalue of a normal Cayley graph with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub lambda: Partition,
    #[serde(serialize_with = "crate::central::serialize_rational")]
    pub eigenvalue: Rational,
    pub multiplicity: u64,
}

pub(crate) fn serialize_rational<S: serde::Serializer>(
    value: &Rational,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_rational(value))
}

/// Exact spectrum of Cay(S_n, C) for a normal connection set C supported on
/// the identity, transposition, 3-cycle and double-transposition classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumTable {
    pub n: usize,
    pub connection: ClassSet,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumTable {
    /// Graph degree = |connection set|.
    pub fn degree(&self) -> BigUint {
        self.connection.size()
    }
}

/// Computes one eigenvalue per partition of n: the identity contributes 1
/// when included, each class contributes its central character, and the
/// multiplicity is the squared dimension. Rows follow partition enumeration
/// order.
///
/// Connection sets with classes other than the three supported ones are
/// rejected: general character values are out of scope here.
pub fn spectrum(n: usize, connection: &ClassSet) -> Result<SpectrumTable, Error> {
    if connection.n() != n {
        return Err(Error::DegreeMismatch(connection.n(), n));
    }
    if n > SPECTRUM_MAX_N {
        return Err(Error::BoundExceeded {
            quantity: "degree for spectrum tables",
            value: n as u64,
            bound: SPECTRUM_MAX_N as u64,
        });
    }
    let mut kinds = Vec::new();
    for ct in connection.cycle_types() {
        match ClassKind::from_cycle_type(ct) {
            Some(kind) => kinds.push(kind),
            None => return Err(Error::UnsupportedClass(ct.to_string())),
        }
    }
    let mut rows = Vec::new();
    let mut trace = Rational::zero();
    let mut total_multiplicity = BigUint::zero();
    for lambda in enumerate_partitions(n)? {
        let mut eigenvalue = if connection.include_identity() {
            rational_int(1)
        } else {
            rational_int(0)
        };
        for &kind in &kinds {
            eigenvalue += central_character(&lambda, kind)?;
        }
        let dim = lambda.dimension()?;
        let multiplicity_big = &dim * &dim;
        let multiplicity = multiplicity_big.to_u64().ok_or(Error::BoundExceeded {
            quantity: "eigenvalue multiplicity",
            value: u64::MAX,
            bound: u64::MAX,
        })?;
        trace += &eigenvalue * rational_int(multiplicity as i64);
        total_multiplicity += multiplicity_big;
        rows.push(SpectrumRow {
            lambda,
            eigenvalue,
            multiplicity,
        });
    }
    let table = SpectrumTable {
        n,
        connection: connection.clone(),
        rows,
    };
    // Structural checks: multiplicities fill the regular representation, the
    // trace counts loops, and the trivial partition carries the graph degree.
    assert_eq!(total_multiplicity, crate::arith::factorial_big(n));
    let expected_trace = if connection.include_identity() {
        Rational::from_integer(BigInt::from(crate::arith::factorial_big(n)))
    } else {
        Rational::zero()
    };
    assert_eq!(trace, expected_trace, "spectrum trace mismatch at n={n}");
    assert_eq!(
        table.rows[0].eigenvalue,
        Rational::from_integer(BigInt::from(connection.size())),
        "degree mismatch at the trivial partition"
    );
    Ok(table)
}

/// The weighted Hoffman bound data for the graphs on the transposition,
/// 3-cycle and double-transposition classes with weights beta.
///
/// Classes that do not exist at this degree (3-cycles need n >= 3, double
/// transpositions n >= 4) enter as empty spanning subgraphs: degree 0 and all
/// eigenvalues 0. This keeps the bound meaningful down to n = 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoffmanReport {
    pub n: usize,
    pub beta: [Rational; 3],
    /// ell_lambda per partition, in enumeration order.
    pub per_lambda: Vec<(Partition, Rational)>,
    pub ell_min: Rational,
    /// beta_1 d_1 + beta_2 d_2 + beta_3 d_3.
    pub weighted_degree: Rational,
    /// (-ell_min) / (weighted_degree - ell_min), the density bound for
    /// independent sets.
    pub ratio_bound: Rational,
}

/// The default weights: (2,3,2) tailored to T_n, (0,3,2) to T_n*.
pub fn default_beta(target: Target) -> [Rational; 3] {
    match target {
        Target::T => [rational_int(2), rational_int(3), rational_int(2)],
        Target::TStar => [rational_int(0), rational_int(3), rational_int(2)],
    }
}

pub fn hoffman_report(n: usize, beta: &[Rational; 3]) -> Result<HoffmanReport, Error> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "hoffman bound needs n >= 3, got {n}"
        )));
    }
    let kinds = [
        ClassKind::Transposition,
        ClassKind::ThreeCycle,
        ClassKind::DoubleTransposition,
    ];
    let mut weighted_degree = Rational::zero();
    for (kind, b) in kinds.iter().zip(beta) {
        if n >= kind.min_degree() {
            let d = class_size(&kind.cycle_type(n)?);
            weighted_degree += b * Rational::from_integer(BigInt::from(d));
        }
    }
    let mut per_lambda = Vec::new();
    let mut ell_min: Option<Rational> = None;
    for lambda in enumerate_partitions(n)? {
        let mut ell = Rational::zero();
        for (kind, b) in kinds.iter().zip(beta) {
            if n >= kind.min_degree() {
                ell += b * central_character(&lambda, *kind)?;
            }
        }
        match &ell_min {
            Some(current) if *current <= ell => {}
            _ => ell_min = Some(ell.clone()),
        }
        per_lambda.push((lambda, ell));
    }
    let ell_min = ell_min.expect("at least one partition");
    let denominator = &weighted_degree - &ell_min;
    if denominator.is_zero() {
        return Err(Error::InvalidInput(
            "degenerate weights: every eigenvalue equals the weighted degree".into(),
        ));
    }
    let ratio_bound = -&ell_min / denominator;
    Ok(HoffmanReport {
        n,
        beta: beta.clone(),
        per_lambda,
        ell_min,
        weighted_degree,
        ratio_bound,
    })
}
