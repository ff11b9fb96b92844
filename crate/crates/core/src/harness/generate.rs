//! Network generators: single-edge perturbations of base networks and
//! uniform random directed graphs.

use rand::distributions::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Geometric;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// A base network with exactly one directed edge removed.
#[derive(Debug, Clone, PartialEq)]
pub struct Perturbation {
    /// Index into the base list.
    pub base: usize,
    /// `(source, target)` of the removed edge, in base indices.
    pub removed: (usize, usize),
    pub graph: DirectedGraph,
}

/// Draws `count` perturbations: each picks a base uniformly at random and
/// deletes one of its edges uniformly at random. Repeats are allowed.
pub fn generate_perturbed_networks(
    bases: &[DirectedGraph],
    count: usize,
    seed: u64,
) -> Result<Vec<Perturbation>> {
    if bases.is_empty() {
        return Err(Error::InvalidParameter("no base networks".into()));
    }
    if let Some(i) = bases.iter().position(|g| g.edge_count() == 0) {
        return Err(Error::InvalidParameter(format!("base network {i} has no edges")));
    }
    let edge_lists: Vec<Vec<(usize, usize)>> = bases
        .iter()
        .map(|g| g.edges().map(|(u, v, _)| (u, v)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let base = rng.gen_range(0..bases.len());
            let edges = &edge_lists[base];
            let (u, v) = edges[rng.gen_range(0..edges.len())];
            Ok(Perturbation {
                base,
                removed: (u, v),
                graph: bases[base].without_edge(u, v)?,
            })
        })
        .collect()
}

/// Random simple directed graph where each ordered pair of distinct nodes
/// is an edge independently with probability `mean_out_degree / (nodes - 1)`.
///
/// Edges are sampled by geometric skips over the `n (n - 1)` ordered pairs,
/// so the cost is linear in the number of edges produced. Nodes are named
/// `0..nodes`.
pub fn generate_synthetic_large(nodes: usize, mean_out_degree: f64, seed: u64) -> Result<DirectedGraph> {
    if nodes < 2 {
        return Err(Error::InvalidParameter("need at least 2 nodes".into()));
    }
    let slots = (nodes - 1) as f64;
    if !(mean_out_degree > 0.0 && mean_out_degree <= slots) {
        return Err(Error::InvalidParameter(format!(
            "mean out-degree must be in (0, {slots}], got {mean_out_degree}"
        )));
    }
    let p = mean_out_degree / slots;
    let geometric = Geometric::new(p)
        .map_err(|e| Error::InvalidParameter(format!("edge probability {p}: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let per_row = (nodes - 1) as u64;
    let total = nodes as u64 * per_row;
    let mut edges = Vec::with_capacity((mean_out_degree * nodes as f64 * 1.1) as usize);
    let mut pos: u64 = 0;
    loop {
        pos = match pos.checked_add(geometric.sample(&mut rng)) {
            Some(p) if p < total => p,
            _ => break,
        };
        let u = (pos / per_row) as usize;
        let r = (pos % per_row) as usize;
        let v = if r < u { r } else { r + 1 };
        edges.push((u, v, 1.0));
        pos += 1;
    }
    DirectedGraph::from_edges(nodes, &edges)
}
