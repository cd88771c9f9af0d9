//! Minimum-distance computation and search-complexity analysis for quantum
//! stabilizer (including CSS) LDPC codes.
//!
//! The toolkit provides:
//!
//! - bit-packed binary-symplectic algebra for Pauli vectors and GF(2)
//!   matrices ([`algebra`], [`bits`]);
//! - code models, validation, file formats, and generators, including
//!   hypergraph products of circulants ([`codes`], [`formats`]);
//! - the qubit-connectivity graph and duplicate-free linked-cluster
//!   enumeration with exact census and growth-fit tooling ([`graph`],
//!   [`clusters`]);
//! - four distance engines behind one result contract: an exhaustive
//!   oracle, the linked-cluster search, meet-in-the-middle bipartition, and
//!   a seeded random-window upper-bound engine ([`engines`]);
//! - closed-form complexity-exponent calculators and Gilbert-Varshamov
//!   solvers for comparing the techniques ([`complexity`]).

pub mod algebra;
pub mod bits;
pub mod clusters;
pub mod codes;
pub mod complexity;
pub mod engines;
mod error;
pub mod formats;
pub mod graph;

pub use error::{Error, Result};
