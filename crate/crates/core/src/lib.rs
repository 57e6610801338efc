//! Orbit-counting calculus for products and iterates of maps.
//!
//! Everything in this crate is pure computation over `alloc`: exact integer
//! transforms between orbit counts and fixed-point counts, rational dynamical
//! zeta functions, orbit Dirichlet series with their Euler-product
//! factorisations, the zero lattice of the triple-product Euler factor and
//! the ghost decomposition used to continue it past its abscissa.
//!
//! IO, argument parsing and output formats live in the `orbitzeta` crate.

#![no_std]

extern crate alloc;

pub mod boundary;
pub mod dirser;
pub mod ghost;
pub mod ratzeta;
pub mod seqcore;

mod bigfloat;

pub use bigfloat::{ln_biguint, ln_rational};
pub use seqcore::factor::{FactoredInteger, Sieve};
pub use seqcore::seq::{FixSeq, OrbitSeq, PrimeClass};
