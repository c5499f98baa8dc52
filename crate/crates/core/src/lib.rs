//! Minimum-weight bipartite matchings maintained under weight updates
//! localized around one vertex, and envy-cycle allocation of indivisible
//! items built on top of them.
//!
//! The central operation is [`dynamic::primal_dual_update`]: given an
//! optimal perfect matching, a certifying potential and new weights on the
//! edges around one vertex, a single Dijkstra run repairs both.

pub mod assignment;
pub mod dynamic;
pub mod error;
pub mod fair;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod residual;
pub mod shortest_path;
pub mod weight;
pub mod workload;

pub use assignment::{hungarian, solve_by_updates, verify_optimal, Solution};
pub use dynamic::{
    from_max_weight_instance, max_weight_matching, primal_dual_update, process_event_stream, right_perfect_update,
    DynamicAssignment, RightPerfectState, UpdateEvent, UpdateReport,
};
pub use error::{Error, Result};
pub use graph::{matching_weight, BipartiteGraph, EdgeId, EdgeWeights, Matching, NodeId, Potential, Side, Vertex};
pub use residual::{
    apply_alternation, reduced_weight, validate_potential, Arc, ArcKind, ArcList, AuxiliaryView, Certificate,
    DummyPool, ResidualGraph,
};
pub use shortest_path::{PathResult, SearchStats};
pub use weight::Weight;
