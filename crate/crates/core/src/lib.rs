//! Branch-and-bound over multi-valued decision diagrams.
//!
//! Problems are written as dynamic programs ([`model::Problem`]) together
//! with a merge operator ([`model::Relaxation`]). The solver compiles
//! restricted diagrams for primal bounds and relaxed diagrams for dual
//! bounds, branches on the last exact layer of the relaxed diagrams and
//! prunes with local bounds and rough upper bounds.
//!
//! Four models ship with the crate: weighted maximum independent set,
//! maximum cut, weighted MAX-2SAT and the travelling salesman problem with
//! time windows.

pub mod io;
pub mod mdd;
pub mod model;
pub mod problems;
pub mod pruning;
pub mod report;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use mdd::{compile, CompilationKind, CompileParams, DecisionDiagram, SubProblem};
pub use model::{Assignment, Decision, Problem, Relaxation, MINUS_INFINITY, PLUS_INFINITY};
pub use solver::{end_gap, solve, Outcome, SolverConfig, Status};
