//! Synthetic AS-graph generation and analysis.
//!
//! Graphs are directed: an edge `u -> v` means `u` is a customer of `v`, and a
//! symmetric (peer-to-peer) arrangement is a pair of anti-parallel edges.
//! Four growth processes are provided (see [`generators`]): the undirected
//! BA and InEd baselines, the directed DInEd process and its region-aware
//! extension GeoDInEd. The [`theory`] module holds the mean-field closed
//! forms, [`analysis`] the measurements (CCDF, leaves, symmetric fraction,
//! dense cores) and [`routing`] the no-valley path machinery.

pub mod analysis;
pub mod error;
pub mod generators;
pub mod graph;
pub mod rng;
pub mod routing;
mod sampler;
pub mod theory;

pub use error::{Error, Result};
pub use generators::{generate, GenerationTrace, Model, ModelParams};
pub use graph::{AsGraph, GraphKind, NodeId, NodeRecord, UndirectedView, WeightKind};
