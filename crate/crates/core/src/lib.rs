//! Directed Steiner tree heuristic built on laminar tree structures.
//!
//! A directed Steiner tree rooted at `r` spanning terminals `t_1..t_b` is
//! described by the way its root-to-terminal paths share arcs: the sets of
//! commodities travelling together form an admissible laminar family. For a
//! fixed full-binary family the cheapest tree with that structure is found
//! exactly by [`dp::Solver`], and [`anneal`] searches structure space with
//! simulated annealing over subtree-prune-and-regraft moves.
//!
//! Module map:
//!
//! * [`graph`] - instances, bidirection and all-pairs shortest paths.
//! * [`io`] - SteinLib STP parsing, solution files and the results CSV.
//! * [`laminar`] - commodity sets, laminar families, SPR moves, initializers.
//! * [`dp`] - the structure DP, arborescence utilities, solution improvement.
//! * [`anneal`] - SA, SA with improvement, the rectilinear variant, replications.
//! * [`baselines`] - the shortest-path heuristics ShP1 / ShP2 and their minimum.
//! * [`profile`] - performance-profile curves over benchmark results.

pub mod anneal;
pub mod baselines;
pub mod dp;
pub mod graph;
pub mod io;
pub mod laminar;
pub mod par;
pub mod profile;

mod error;

pub use error::Error;
pub use graph::{Apsp, GraphArc, Instance};
pub use laminar::{CommoditySet, LaminarFamily};
pub use par::ExecMode;
