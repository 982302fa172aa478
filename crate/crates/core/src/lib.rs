//! Exact solver for the graph bandwidth problem.
//!
//! The decision procedure runs in two phases. [`assignment`] enumerates
//! coarse segment assignments over a rooted spanning tree, and [`search`]
//! checks each one for a consistent b-ordering with a memoized depth-first
//! search over base-segment states. [`solver`] wraps this into bandwidth
//! minimization, [`oracle`] is an independent brute-force reference, and
//! [`mc`] evaluates the branching constraints bounding the number of
//! states visited.

pub mod assignment;
pub mod cli;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod mc;
pub mod oracle;
pub mod report;
pub mod search;
pub mod solver;

pub use graph::{Graph, GraphError, Ordering, RootedTree};
pub use solver::{decide, minimize_bandwidth, Budget, Decision, SolveError, SolveResult, SolverConfig, Status};
