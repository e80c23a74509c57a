//! Deciders, obstructions and exhaustive search for tilings of the symmetric
//! group S_n by its transpositions.
//!
//! A pair (X, Y) of subsets tiles a group when every element factors
//! uniquely as x·y. This crate asks that question for X = T_n (the identity
//! plus all transpositions) and X = T_n* (the transpositions alone):
//!
//! - [`partition`]: integer partitions, contents, dominance, hook dimensions;
//! - [`perm`]: permutations, cycle types, lexicographic group enumeration;
//! - [`classes`]: conjugacy classes, the generator sets and their squares;
//! - [`central`]: exact central characters, Cayley-graph spectra, the
//!   weighted Hoffman density bound;
//! - [`criteria`]: the obstruction battery (counting, factorial
//!   divisibility, prime threshold, zero eigenvalue, Hoffman ratio);
//! - [`search`]: dancing-links exact-cover search for tilings, witness
//!   verification, intersection avoidance;
//! - [`transitivity`]: ordered set partitions and lambda-transitivity;
//! - [`report`]: scans over degree ranges and JSON/table emission.
//!
//! Criteria only ever answer "excluded" or "silent"; existence at small
//! degree is settled by the exhaustive search. All verdict paths use exact
//! integer or rational arithmetic.

mod arith;

pub mod central;
pub mod classes;
pub mod criteria;
pub mod dlx;
pub mod error;
pub mod partition;
pub mod perm;
pub mod ratio;
pub mod report;
pub mod search;
pub mod transitivity;

pub use classes::{ClassSet, Target};
pub use error::Error;
pub use partition::Partition;
pub use perm::Permutation;
pub use ratio::Rational;
pub use search::{SearchCertificate, SearchOptions, TilingWitness};
