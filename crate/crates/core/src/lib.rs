//! Conditional `(k, r)`-coloring of simple graphs.
//!
//! A `(k, r)`-coloring assigns each vertex one of `k` colors so that adjacent
//! vertices differ (C1) and every vertex `v` sees at least `min(deg v, r)`
//! distinct colors among its neighbors (C2). The crate provides:
//!
//! - [`graph`]: graphs, DIMACS edge-format I/O, hamiltonian witnesses;
//! - [`coloring`]: verification, an exact backtracking solver, a bounded
//!   brute-force oracle, closed forms for paths and cycles, a CNF encoding;
//! - [`cnf`]: formulas, DIMACS CNF I/O, normalization for the 3-SAT reduction;
//! - [`gadgets`]: certification and synthesis of the clause gadget;
//! - [`reductions`]: constructions into `(k, r)`-coloring with witness
//!   translation in both directions.

pub mod cnf;
pub mod coloring;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod reductions;

pub use coloring::{
    chi_r, is_valid_coloring, solve_kr, verify_coloring, ColoringParams, ConditionalColoring,
    Verdict, Violation,
};
pub use error::{Error, Result};
pub use graph::{Graph, HamiltonianWitness, VertexRole};
