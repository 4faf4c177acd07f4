//! Graph edge ordering and chunk-based edge partitioning.
//!
//! An undirected graph is turned into an ordered edge list that keeps
//! neighboring edges close together. Any k-way partitioning is then k
//! contiguous chunks of that list, computed in O(1) per query.

pub mod chunk;
pub mod error;
pub mod graph;
pub mod graphgen;
pub mod hash;
pub mod io;
pub mod metrics;
pub mod ordering;
pub mod partitioners;
pub mod scaling;

pub use chunk::{chunk_start, chunk_width, id2p, make_partition_spec, PartitionSpec};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, Edge, Graph, VertexId};
pub use ordering::{Ordering, OrderingParams, Restart};
pub use partitioners::Assignment;
