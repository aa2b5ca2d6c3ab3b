//! Arithmetic of Krull monoids through zero-sum sequences.
//!
//! The crate computes atoms, Davenport constants, sets of lengths, distances,
//! catenary degrees, distances in minimal relations and the set ℸ* for
//! monoids of zero-sum sequences over finite abelian groups (with any number
//! of prime divisors per class), for direct products of such monoids, and
//! for monoids given by generators and an integer relation lattice.

pub mod blockmonoid;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod factorization;
pub mod group;
pub mod invariants;
pub mod presented;

pub use error::{Error, Result};
