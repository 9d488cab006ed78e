//! Combinatorics of finite CAT(0) cube complexes presented as median graphs.

pub mod contact;
pub mod convexity;
pub mod dilworth;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod walls;

pub use error::{Error, Result};
pub use graph::{generate, GeneratorSpec, GraphDocument, MedianGraph, Vertex};
pub use walls::{Side, WallId, WallSet};
