//! Exact-arithmetic library for q-Catalan, q-Kreweras and q-Narayana
//! polynomials of Weyl groups, root-of-unity evaluation through cyclotomic
//! reduction, and an independent battery of brute-force combinatorial,
//! group-theoretic and finite-field oracles that verify the identities these
//! polynomials satisfy, including the cyclic sieving phenomenon on
//! noncrossing partitions.

pub mod coxeter;
pub mod error;
pub mod exceptional;
pub mod kreweras;
pub mod ncmodels;
pub mod nilcount;
pub mod partitions;
pub mod qpoly;
pub mod report;
pub mod sieve;
pub mod weyl;

pub use error::{Error, Result};
