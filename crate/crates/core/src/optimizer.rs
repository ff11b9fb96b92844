//! Density optimization of an existing partition.
//!
//! Each community is decomposed into the strongly connected components of
//! its induced subgraph. When there is more than one component and their
//! mean density strictly exceeds the community's own density, the community
//! is replaced by one community per component. Otherwise it is kept as is.
//! Communities are handled independently in a single pass.

use crate::error::Result;
use crate::exec::Execution;
use crate::graph::DirectedGraph;
use crate::metrics::{densities_by_label, density, mean};
use crate::partition::Partition;
use crate::scc::strongly_connected_components;

/// One executed split.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    /// Community id in the input partition.
    pub community: usize,
    pub component_count: usize,
    pub community_density: f64,
    pub mean_component_density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    pub input_partition: Partition,
    pub output_partition: Partition,
    /// Executed splits, ordered by input community id.
    pub splits: Vec<Split>,
}

pub fn optimize_density(g: &DirectedGraph, p: &Partition) -> Result<OptimizationReport> {
    optimize_density_with(g, p, Execution::default())
}

pub fn optimize_density_with(
    g: &DirectedGraph,
    p: &Partition,
    exec: Execution,
) -> Result<OptimizationReport> {
    p.check_covers(g)?;
    let communities = p.communities();
    let decisions = exec.try_map(&communities, |members| examine(g, members))?;

    // New label = (input community, component ordinal within it).
    let mut labels = vec![(0usize, 0usize); g.node_count()];
    let mut splits = Vec::new();
    for (c, (members, decision)) in communities.iter().zip(decisions).enumerate() {
        match decision {
            Some((split, component_of)) => {
                for (&v, &k) in members.iter().zip(&component_of) {
                    labels[v] = (c, k);
                }
                splits.push(Split {
                    community: c,
                    ..split
                });
            }
            None => {
                for &v in members {
                    labels[v] = (c, 0);
                }
            }
        }
    }

    Ok(OptimizationReport {
        input_partition: p.clone(),
        output_partition: Partition::from_labels(labels),
        splits,
    })
}

/// Returns the split (with a placeholder community id) and each member's
/// component ordinal when the community should be disbanded.
fn examine(g: &DirectedGraph, members: &[usize]) -> Result<Option<(Split, Vec<usize>)>> {
    let sub = g.induced_subgraph(members)?;
    let scc = strongly_connected_components(&sub.graph);
    if scc.len() <= 1 {
        return Ok(None);
    }
    let community_density = density(sub.graph.edge_count(), sub.graph.node_count());
    let component_of: Vec<usize> = (0..sub.graph.node_count())
        .map(|v| scc.component_of(v))
        .collect();
    let mean_component_density = mean(&densities_by_label(&sub.graph, &component_of, scc.len()));
    if mean_component_density > community_density {
        // `members` is ascending, as are the subgraph's parent indices.
        Ok(Some((
            Split {
                community: usize::MAX,
                component_count: scc.len(),
                community_density,
                mean_component_density,
            },
            component_of,
        )))
    } else {
        Ok(None)
    }
}
