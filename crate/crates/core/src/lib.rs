//! Construction, verification and certification of `(K_t, T_k)`-co-critical
//! graphs.
//!
//! A graph `G` *arrows* `(K_t, T_k)` when every red/blue colouring of its
//! edges has a red `K_t` or a blue tree on `k` vertices. A non-complete graph
//! is *co-critical* when it does not arrow the pair but every graph obtained
//! by adding one missing edge does.

pub mod canon;
pub mod coloring;
pub mod construction;
pub mod error;
pub mod graph;
pub mod io;
pub mod percolation;
pub mod report;
pub mod search;
pub mod stable;
pub mod verify;

pub use coloring::{cross_graph, partition_to_coloring, BlockPartition, ColoringRecord, EdgeColoring};
pub use error::{Error, GraphError, Result};
pub use graph::{Graph, VertexSet, MAX_ORDER};
pub use search::{
    arrows, brute_force_exists, enumerate_critical_colorings, exists_critical_coloring,
    max_red_critical_coloring, SearchBudget, SearchOutcome, SearchStatus,
};
