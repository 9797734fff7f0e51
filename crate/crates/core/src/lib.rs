//! Finite discrete-time dynamical systems under disjoint union and direct
//! product, with solvers for division, roots and related equations.

pub mod cli;
pub mod fdds;
pub mod gen;
pub mod io;
pub mod oracle;
pub mod solvers;
pub mod tree;
pub mod unroll;

pub use fdds::{Component, Fdds, FddsError};
pub use solvers::{Certificate, SolveOutcome, Status};
pub use tree::{forest_divide, tree_divide, Forest, Tree, TreeCode};
