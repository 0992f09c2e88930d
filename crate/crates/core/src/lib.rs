//! Exact solvers for general Kneser graphs of tree families, cut numbers,
//! generalized and alternating Turán numbers, and the block-structured edge
//! orderings used to compare them.

pub mod alternating;
pub mod budget;
pub mod cuts;
pub mod forest;
mod combinatorics;
pub mod graph;
pub mod harness;
pub mod kneser;
mod par;
pub mod sigma;
pub mod subtree;

pub use budget::{Budget, Meter};
pub use graph::{Decomposition, EdgeSet, FamilyDescriptor, Graph};
pub use par::is_parallel;
