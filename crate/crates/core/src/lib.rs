//! Exact structural solvers for edge-disjoint paths, with reference oracles
//! and instance generators.

pub mod graph;
pub mod matching;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod ilp;
pub mod reductions;
pub mod sedp;
pub mod twdp;
pub mod fracture;
pub mod corpus;
