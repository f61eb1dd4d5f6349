//! Dominating set reconfiguration (DSR) under the token addition/removal rule.
//!
//! Two dominating sets of a graph are adjacent when they differ in exactly one
//! vertex. Given a source set, a target set, and a cardinality threshold `k`,
//! the DSR question asks whether the source can be walked to the target through
//! dominating sets that never exceed `k` vertices.
//!
//! This crate provides:
//!
//! * graph parsing and class machinery ([`graph`], [`cotree`], [`interval`]);
//! * domination predicates and a brute-force minimum oracle ([`domset`]);
//! * sequence replay, verification, and an exhaustive BFS reachability oracle
//!   ([`reconfig`]);
//! * linear-time deciders and sequence builders for trees, interval graphs,
//!   and cographs via canonical dominating sets ([`scheme`], [`canonical`]);
//! * executable hardness reductions from vertex cover reconfiguration
//!   ([`reductions`]);
//! * seeded instance generators ([`generate`]) and batch helpers ([`batch`]).

pub mod batch;
pub mod canonical;
pub mod cotree;
pub mod domset;
pub mod format;
pub mod generate;
pub mod graph;
pub mod interval;
pub mod reconfig;
pub mod reductions;
pub mod scheme;

pub use graph::{Graph, VertexSet};
pub use reconfig::{DsrInstance, Move, ReconfSequence};
