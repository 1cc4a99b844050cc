//! Edge rings of mixed signed, directed graphs.
//!
//! A mixed graph `G` on vertices `1..=n` carries positive and negative
//! (possibly looped) undirected edges and directed edges. Every edge maps to
//! an exponent vector in `Z^n`:
//!
//! * `+ij` ↦ `e_i + e_j`, `-ij` ↦ `-(e_i + e_j)` (a loop `±ii` ↦ `±2 e_i`),
//! * `(i, j)` ↦ `e_j - e_i`.
//!
//! The edge ring `k[G]` is the semigroup ring of the semigroup generated by
//! these vectors. This crate computes the cone of that semigroup, its facets
//! (both by brute-force polyhedral search and through facet subgraphs),
//! decides Serre's `R1` condition two independent ways, decides normality by a
//! complete lattice-point search and derives a Cohen-Macaulay verdict.
//!
//! All arithmetic is exact.

pub mod census;
pub mod cone;
pub mod error;
pub mod facets;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod serre;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, ExponentVector, MixedGraph, Sign};
