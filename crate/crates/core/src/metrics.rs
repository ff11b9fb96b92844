//! Partition quality measures: community density, average density per
//! community (ADC), modularity, and clustering coefficients.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::partition::Partition;

/// Directed density `m_in / (n (n - 1))` of the subgraph induced by `nodes`.
///
/// A single node has density 0. Duplicate indices are ignored.
pub fn community_density(g: &DirectedGraph, nodes: &[usize]) -> Result<f64> {
    let mut set = nodes.to_vec();
    set.sort_unstable();
    set.dedup();
    match set.last() {
        None => return Err(Error::EmptyNodeSet),
        Some(&last) => g.check_node(last)?,
    }
    let internal = set
        .iter()
        .flat_map(|&u| g.out_neighbors(u))
        .filter(|&&(v, _)| set.binary_search(&v).is_ok())
        .count();
    Ok(density(internal, set.len()))
}

pub(crate) fn density(internal_edges: usize, size: usize) -> f64 {
    if size < 2 {
        0.0
    } else {
        internal_edges as f64 / (size as f64 * (size as f64 - 1.0))
    }
}

/// Density of every community, indexed by community id. One pass over the edges.
pub fn community_densities(g: &DirectedGraph, p: &Partition) -> Result<Vec<f64>> {
    p.check_covers(g)?;
    Ok(densities_by_label(g, p.assignment(), p.community_count()))
}

/// `labels[v] < count` for every node.
pub(crate) fn densities_by_label(g: &DirectedGraph, labels: &[usize], count: usize) -> Vec<f64> {
    let mut sizes = vec![0usize; count];
    let mut internal = vec![0usize; count];
    for &c in labels {
        sizes[c] += 1;
    }
    for (u, v, _) in g.edges() {
        if labels[u] == labels[v] {
            internal[labels[u]] += 1;
        }
    }
    sizes
        .iter()
        .zip(&internal)
        .map(|(&n, &m)| density(m, n))
        .collect()
}

/// Average density per community: the unweighted mean of community densities.
///
/// An empty graph has no communities; its ADC is reported as 0.
pub fn adc(g: &DirectedGraph, p: &Partition) -> Result<f64> {
    let densities = community_densities(g, p)?;
    Ok(mean(&densities))
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// How modularity treats edge direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModularityMode {
    /// `A` is the directed adjacency and `k_i` its row sums (out-weights).
    #[default]
    AsWritten,
    /// `A` is the symmetrized adjacency of [`DirectedGraph::undirected_view`].
    Symmetrized,
}

impl fmt::Display for ModularityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModularityMode::AsWritten => "as-written",
            ModularityMode::Symmetrized => "symmetrized",
        })
    }
}

impl FromStr for ModularityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "as-written" => Ok(ModularityMode::AsWritten),
            "symmetrized" => Ok(ModularityMode::Symmetrized),
            other => Err(Error::InvalidParameter(format!(
                "unknown modularity mode `{other}` (expected as-written or symmetrized)"
            ))),
        }
    }
}

/// Modularity `Q = 1/(2m) Σ_ij [A_ij - k_i k_j / (2m)] δ(c_i, c_j)`.
///
/// With `k_i = Σ_j A_ij` and `2m = Σ_ij A_ij`. The double sum collapses to
/// `Σ_c [w_c / 2m - (K_c / 2m)^2]`, where `w_c` is the adjacency mass inside
/// community `c` and `K_c` the sum of its `k_i`.
pub fn modularity(g: &DirectedGraph, p: &Partition, mode: ModularityMode) -> Result<f64> {
    p.check_covers(g)?;
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    Ok(match mode {
        ModularityMode::AsWritten => {
            modularity_of_rows(g.node_count(), |i| g.out_neighbors(i), p)
        }
        ModularityMode::Symmetrized => {
            let u = g.undirected_view();
            modularity_of_rows(u.node_count(), |i| u.neighbors(i), p)
        }
    })
}

fn modularity_of_rows<'a>(
    n: usize,
    row: impl Fn(usize) -> &'a [(usize, f64)],
    p: &Partition,
) -> f64 {
    let count = p.community_count();
    let mut inner = vec![0.0; count];
    let mut degree = vec![0.0; count];
    let mut total = 0.0;
    // Row-wise accumulation in a fixed order: when a whole row is internal,
    // its contribution to `inner` and `degree` is bit-identical, so the
    // all-in-one partition yields exactly 0.
    for i in 0..n {
        let c = p.community_of(i);
        let mut k = 0.0;
        let mut w = 0.0;
        for &(j, a) in row(i) {
            k += a;
            if p.community_of(j) == c {
                w += a;
            }
        }
        inner[c] += w;
        degree[c] += k;
        total += k;
    }
    inner
        .iter()
        .zip(&degree)
        .map(|(&w, &k)| w / total - (k / total) * (k / total))
        .sum()
}

/// Triangle and connected-triple counts of a simple undirected graph.
pub fn triangles_and_triples(u: &UndirectedGraph) -> (u64, u64) {
    let n = u.node_count();
    let mut mark = vec![false; n];
    let mut triangles = 0u64;
    let mut triples = 0u64;
    for a in 0..n {
        let d = u.degree(a) as u64;
        triples += d * d.saturating_sub(1) / 2;
        let higher = |x: &&(usize, f64)| x.0 > a;
        for &(b, _) in u.neighbors(a).iter().filter(higher) {
            mark[b] = true;
        }
        for &(b, _) in u.neighbors(a).iter().filter(higher) {
            for &(c, _) in u.neighbors(b) {
                if c > b && mark[c] {
                    triangles += 1;
                }
            }
        }
        for &(b, _) in u.neighbors(a).iter().filter(higher) {
            mark[b] = false;
        }
    }
    (triangles, triples)
}

/// Global transitivity `3 × triangles / connected triples` of the
/// symmetrized graph; 0 when there is no connected triple.
pub fn global_clustering_coefficient(g: &DirectedGraph) -> f64 {
    let (triangles, triples) = triangles_and_triples(&g.undirected_view());
    transitivity(triangles, triples)
}

pub(crate) fn transitivity(triangles: u64, triples: u64) -> f64 {
    if triples == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / triples as f64
    }
}

/// Local clustering of one node: closed neighbour pairs over all pairs.
pub(crate) fn local_coefficient(triangles: u64, degree: u64) -> f64 {
    if degree < 2 {
        0.0
    } else {
        2.0 * triangles as f64 / (degree as f64 * (degree as f64 - 1.0))
    }
}

/// Mean of the per-node local clustering coefficients of the symmetrized
/// graph, counting nodes of degree < 2 as 0. An empty graph yields 0.
pub fn average_local_clustering(g: &DirectedGraph) -> f64 {
    let u = g.undirected_view();
    let n = u.node_count();
    if n == 0 {
        return 0.0;
    }
    let mut per_node = vec![0u64; n];
    let mut mark = vec![false; n];
    for a in 0..n {
        for &(b, _) in u.neighbors(a) {
            mark[b] = true;
        }
        for &(b, _) in u.neighbors(a).iter().filter(|x| x.0 > a) {
            for &(c, _) in u.neighbors(b).iter().filter(|x| x.0 > b) {
                if mark[c] {
                    per_node[a] += 1;
                    per_node[b] += 1;
                    per_node[c] += 1;
                }
            }
        }
        for &(b, _) in u.neighbors(a) {
            mark[b] = false;
        }
    }
    let sum: f64 = (0..n)
        .map(|v| local_coefficient(per_node[v], u.degree(v) as u64))
        .sum();
    sum / n as f64
}

/// Community count, ADC and modularity of one partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsRecord {
    pub n_communities: usize,
    pub adc: f64,
    pub modularity: f64,
}

impl MetricsRecord {
    pub fn compute(g: &DirectedGraph, p: &Partition, mode: ModularityMode) -> Result<Self> {
        Ok(MetricsRecord {
            n_communities: p.community_count(),
            adc: adc(g, p)?,
            modularity: modularity(g, p, mode)?,
        })
    }
}
