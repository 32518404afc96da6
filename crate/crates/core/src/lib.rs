//! Percolation laboratory: coupled bond percolation on finite graphs, isoperimetric
//! profiles and min cutsets, the seeded touch exploration, tail estimators, block
//! renormalization, and a reproducible experiment runner.

pub mod cli;
pub mod cluster;
pub mod curve;
pub mod error;
pub mod explore;
pub mod graph;
pub mod iso;
pub mod percolation;
pub mod renorm;
pub mod rng;
pub mod sets;
pub mod stats;
pub mod tail;

pub use error::{Error, Result};
pub use graph::{FiniteGraph, GraphSpec};
pub use sets::{EdgeId, EdgeSet, VertexId, VertexSet};
