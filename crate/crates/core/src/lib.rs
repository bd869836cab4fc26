//! Constant-factor approximation for weighted ptolemaic vertex deletion.
//!
//! A graph is ptolemaic when it is chordal and gem-free. The pipeline in
//! [`pipeline`] deletes a cheap vertex set leaving a ptolemaic graph:
//! induced C4s and gems are hit by LP threshold rounding, and the remaining
//! (C4, gem)-free graph is handled through its inter-clique digraph
//! ([`icd`]) as an instance of feedback vertex set with precedence
//! constraints ([`fvsp`]). Exact exponential solvers live in [`oracle`].

pub mod cliques;
pub mod dag;
pub mod fvsp;
pub mod gen;
pub mod graph;
pub mod icd;
pub mod lp;
pub mod obstruction;
pub mod oracle;
pub mod pipeline;

pub use fvsp::{solve_fvsp, FvspInstance, FvspSolution, RoundingParams};
pub use graph::{Vertex, VertexSet, WeightedGraph};
pub use icd::{brute_force_icd, build_icd, InterCliqueDigraph};
pub use obstruction::{is_ptolemaic, Obstruction};
pub use pipeline::{solve_ptolemaic_deletion, PipelineResult};
