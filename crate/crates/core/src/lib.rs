//! Density-based community detection and optimization for directed graphs.
//!
//! - [`graph`]: simple directed graphs and the edge-list format
//! - [`partition`]: canonical node-to-community assignments
//! - [`scc`]: strongly connected components
//! - [`metrics`]: community density, ADC, modularity, clustering coefficients
//! - [`lpa`]: seeded asynchronous label propagation
//! - [`optimizer`]: splits communities into their SCCs when that raises density
//! - [`detector`]: SCC-seeded detection driven by clustering coefficients
//! - [`harness`]: toy networks, generators and the comparison experiment
//!
//! The `parallel` feature (on by default) lets the optimizer and the
//! experiment runner spread independent work over a rayon pool; see
//! [`Execution`].

pub mod detector;
pub mod error;
pub mod exec;
pub mod graph;
pub mod harness;
pub mod lpa;
pub mod metrics;
pub mod optimizer;
pub mod partition;
pub mod scc;

pub use detector::{detect_communities, CoefficientStrategy, DetectorConfig};
pub use error::{Error, Result};
pub use exec::Execution;
pub use graph::{parse_edge_list, DirectedGraph, GraphBuilder, Subgraph, UndirectedGraph};
pub use lpa::{label_propagation, LpaConfig, LpaOutcome};
pub use metrics::{
    adc, community_density, global_clustering_coefficient, modularity, MetricsRecord,
    ModularityMode,
};
pub use optimizer::{optimize_density, optimize_density_with, OptimizationReport, Split};
pub use partition::Partition;
pub use scc::{strongly_connected_components, SccDecomposition};
