//! Arc-disjoint Hamiltonian path pairs in two-generated abelian Cayley digraphs.
//!
//! The crate is organised around one witness type, [`LabeledWalk`], and one
//! verifier, [`CayleyDigraph::verify_pair`]. Every constructor below returns
//! walks that have already passed that verifier:
//!
//! - [`family_one`]: `Cay(Z_k; a, a+1)` through cut permutations and the
//!   Hamiltonian cut set, with pairs realized from translated cut paths.
//! - [`lattice`]: the primitive-ray description of the same cut set, sector
//!   masses, `theta` and the reflected gap graph.
//! - [`family_two`]: `Cay(Z_k; -a, a+1)` with `k = (2a+1)L` through
//!   quotient-position covers and a single splice.
//! - [`products`]: strongly switchable pairs and lifting through a directed
//!   cycle factor, giving pairs in `C_m x C_n x C_l`.
//! - [`oracle`]: exhaustive depth-first search used as independent ground truth.
//! - [`witness`] and [`scan`]: file formats and parameter sweeps used by the CLI.

pub mod arith;
pub mod digraph;
pub mod error;
pub mod family_one;
pub mod family_two;
pub mod group;
pub mod lattice;
pub mod oracle;
pub mod products;
pub mod scan;
pub mod witness;

pub use digraph::{
    ArcSet, CayleyDigraph, Label, LabeledWalk, PairViolation, VerificationReport, Violation,
    WalkMode,
};
pub use error::{Error, Result};
pub use group::{FiniteAbelianGroup, Vertex};
pub use oracle::{SearchConstraints, SearchOutcome};

/// Default node budget for a single oracle call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
