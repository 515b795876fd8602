//! Decompositions of the hypercube `Q_n` into cycles of length `2^m·n` whose
//! matching edges, taken every `n` steps along each cycle, form a perfect
//! matching of `Q_n`.
//!
//! A vertex is a subset of `[n]` ([`Vertex`]); a cycle is a start vertex and
//! an edge-direction sequence ([`CycleSpec`]). [`decompose`] builds the
//! decomposition for `n = 2^m` from products of `2h`-cycles and lifts it two
//! dimensions at a time. The [`verify`] module re-checks every claim by brute
//! force, and [`io`] reads and writes the QCYC text format.

pub mod appendix;
pub mod basis;
pub mod decompose;
pub mod error;
pub mod group;
pub mod hypercube;
pub mod induction;
pub mod io;
pub mod kotzig;
pub mod mollard_ramras;
pub mod verify;

pub use decompose::{
    decompose, decompose_with, path_decomposition, Decomposition, Limits, PathDecomposition,
};
pub use error::{Error, Result};
pub use hypercube::{CycleSpec, Dim, Direction, Edge, HalfDim, OrientedEdge, Vertex};
pub use verify::{verify_decomposition, Finding, Report};
