//! Oriented Hamilton cycles in dense digraphs.

pub mod bitset;
pub mod decomposition;
pub mod embedding;
pub mod error;
pub mod expansion;
pub mod generators;
pub mod graph;
pub mod io;
pub mod num;
pub mod pattern;
pub mod workbench;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::Digraph;
pub use pattern::{CyclePattern, PathPattern};
