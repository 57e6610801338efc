//! Exact integer calculus on orbit counts `O(n)` and fixed-point counts `F(n)`.
//!
//! The two sequences determine each other through
//! `F(n) = Σ_{d|n} d·O(d)` and its Möbius inverse. Cartesian products
//! multiply fixed-point counts pointwise, iterates sample them along
//! multiples, and both have direct formulas at the orbit level which are
//! implemented in [`ops`] and cross-checked against the Möbius path.

pub mod factor;
pub mod ops;
pub mod seq;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    /// Sequences are indexed from 1; `n = 0` (or an iterate `k = 0`) is meaningless.
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error("fixed-point counts are not realizable: Möbius sum at n = {n} is not divisible by n")]
    NonIntegral { n: u64 },
    #[error("fixed-point counts are not realizable: Möbius sum at n = {n} is negative")]
    Negative { n: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("integer overflow in index arithmetic")]
    Overflow,
}

pub use factor::{FactoredInteger, Sieve};
pub use ops::{
    euler_transform_series, fix_from_orbit, iterate_fix, iterate_orbits, orbit_from_fix,
    pi_count, product_fix, product_orbits, sparse_prime_orbit_seq, zeta_series_from_fix,
};
pub use seq::{FixSeq, OrbitSeq, PrimeClass, SeqTags};
