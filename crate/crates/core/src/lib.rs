//! Generalized core decomposition of networks.
//!
//! A vertex property function `p(v, U)` assigns a real value to a vertex
//! relative to a vertex set. The p-core at level `t` is the largest set `C`
//! in which every member has `p(v, C) ≥ t`; for monotone properties it is
//! unique and cores at increasing levels are nested. This crate computes
//! cores at a level, full core hierarchies, and analyses built on them.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`.

pub mod analysis;
pub mod cli;
pub mod engine;
pub mod error;
pub mod graph;
pub mod heap;
pub mod pajek;
pub mod property;
pub mod scalar;

pub use analysis::{
    greedy_color_by_core, max_clique_localized, segmentation, Coloring, SegmentationTable, Thresholds,
};
pub use engine::{
    brute_force_core, core_hierarchy, degree_cores_linear, order_independence_fuzz, p_core_at_level,
    CoreHierarchy, CoreKind, CoreResult, DeletionProcess, PeelOptions, TieBreakPolicy,
};
pub use error::{Error, Result};
pub use graph::{
    build_network, restrict_degrees, BuildOptions, DegreeMode, Direction, MergeRule, Network, SubsetView,
    VertexId,
};
pub use pajek::{export_dot, parse_edge_list, parse_net, write_net, NetDocument, SizeScale, WeightClasses};
pub use property::{check_monotonicity, Property, VertexProperty};
pub use scalar::Scalar;

pub type Network64 = Network<f64>;
pub type Network32 = Network<f32>;
pub type CoreResult64 = CoreResult<f64>;
pub type CoreHierarchy64 = CoreHierarchy<f64>;
pub type NetDocument64 = NetDocument<f64>;
pub type SegmentationTable64 = SegmentationTable<f64>;
pub type Thresholds64 = Thresholds<f64>;
