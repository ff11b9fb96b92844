//! Directed graph storage and edge-list ingestion.
//!
//! Nodes are dense indices `0..n` carrying the external name they were
//! declared with. Graphs are simple: no self-loops, no duplicate directed
//! edges, strictly positive weights. Once built a graph is immutable.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Keyword that declares an isolated node in the edge-list format.
pub const NODE_KEYWORD: &str = "NODE";

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedGraph {
    labels: Vec<String>,
    /// Out-neighbours per node, sorted by target index.
    out_adj: Vec<Vec<(usize, f64)>>,
    /// In-neighbours per node, sorted by source index.
    in_adj: Vec<Vec<(usize, f64)>>,
    edge_count: usize,
}

impl DirectedGraph {
    /// Graph with `node_count` nodes named `"0"`, `"1"`, ... and the given
    /// weighted edges.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut b = GraphBuilder::with_capacity(node_count, edges.len());
        for i in 0..node_count {
            b.add_node(&i.to_string())?;
        }
        for &(u, v, w) in edges {
            b.add_edge_by_index(u, v, w)?;
        }
        Ok(b.build())
    }

    /// Unit-weight convenience over [`DirectedGraph::from_edges`].
    pub fn from_unweighted(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Self::from_edges(node_count, &weighted)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn out_neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.out_adj[node]
    }

    pub fn in_neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.in_adj[node]
    }

    /// Stored weight of `source -> target`, `None` when the edge is absent.
    pub fn weight(&self, source: usize, target: usize) -> Option<f64> {
        let row = self.out_adj.get(source)?;
        row.binary_search_by_key(&target, |&(t, _)| t)
            .ok()
            .map(|i| row[i].1)
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.weight(source, target).is_some()
    }

    /// Weighted out-degree, the row sum of the adjacency matrix.
    pub fn out_weight(&self, node: usize) -> f64 {
        self.out_adj[node].iter().map(|&(_, w)| w).sum()
    }

    /// All edges ordered by source, then target.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&(v, w)| (u, v, w)))
    }

    pub fn check_node(&self, index: usize) -> Result<()> {
        if index < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                index,
                node_count: self.node_count(),
            })
        }
    }

    /// Copy of the graph with one edge removed. The node set is unchanged.
    pub fn without_edge(&self, source: usize, target: usize) -> Result<Self> {
        if !self.has_edge(source, target) {
            return Err(Error::MissingEdge {
                source_index: source,
                target_index: target,
            });
        }
        let mut g = self.clone();
        g.out_adj[source].retain(|&(t, _)| t != target);
        g.in_adj[target].retain(|&(s, _)| s != source);
        g.edge_count -= 1;
        Ok(g)
    }

    /// Subgraph induced by `nodes`, re-indexed densely in ascending parent order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Subgraph> {
        let mut parent_index = nodes.to_vec();
        parent_index.sort_unstable();
        parent_index.dedup();
        if let Some(&last) = parent_index.last() {
            self.check_node(last)?;
        }

        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &p) in parent_index.iter().enumerate() {
            local[p] = i;
        }

        let labels: Vec<String> = parent_index
            .iter()
            .map(|&p| self.labels[p].clone())
            .collect();
        let mut out_adj = vec![Vec::new(); parent_index.len()];
        let mut in_adj = vec![Vec::new(); parent_index.len()];
        let mut edge_count = 0;
        for (i, &p) in parent_index.iter().enumerate() {
            for &(t, w) in &self.out_adj[p] {
                let j = local[t];
                if j != usize::MAX {
                    out_adj[i].push((j, w));
                    in_adj[j].push((i, w));
                    edge_count += 1;
                }
            }
        }
        Ok(Subgraph {
            graph: DirectedGraph {
                labels,
                out_adj,
                in_adj,
                edge_count,
            },
            parent_index,
        })
    }

    /// Symmetrized simple view: `{i, j}` exists iff either direction does,
    /// weighted by the sum of both directed weights.
    pub fn undirected_view(&self) -> UndirectedGraph {
        let n = self.node_count();
        let mut adj = Vec::with_capacity(n);
        for i in 0..n {
            // Both rows are sorted; merge them.
            let (out, inc) = (&self.out_adj[i], &self.in_adj[i]);
            let mut row = Vec::with_capacity(out.len() + inc.len());
            let (mut a, mut b) = (0, 0);
            while a < out.len() || b < inc.len() {
                match (out.get(a), inc.get(b)) {
                    (Some(&(x, wx)), Some(&(y, wy))) if x == y => {
                        row.push((x, wx + wy));
                        a += 1;
                        b += 1;
                    }
                    (Some(&(x, wx)), Some(&(y, _))) if x < y => {
                        row.push((x, wx));
                        a += 1;
                    }
                    (Some(&(x, wx)), None) => {
                        row.push((x, wx));
                        a += 1;
                    }
                    (_, Some(&(y, wy))) => {
                        row.push((y, wy));
                        b += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            adj.push(row);
        }
        UndirectedGraph { adj }
    }

    /// Serializes into the edge-list text format.
    ///
    /// Every node is declared first so that re-parsing reproduces the same
    /// dense indices, then edges follow in source/target order. Weights are
    /// omitted when equal to 1.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            let _ = writeln!(out, "{NODE_KEYWORD} {label}");
        }
        for (u, v, w) in self.edges() {
            let source = &self.labels[u];
            // A two-token line starting with the keyword would read as a declaration.
            if w == 1.0 && source != NODE_KEYWORD {
                let _ = writeln!(out, "{source} {}", self.labels[v]);
            } else {
                let _ = writeln!(out, "{source} {} {w}", self.labels[v]);
            }
        }
        out
    }
}

/// An induced subgraph plus the map from its indices back to the parent's.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph {
    pub graph: DirectedGraph,
    pub parent_index: Vec<usize>,
}

/// Simple undirected graph; every edge is stored in both endpoint rows.
#[derive(Debug, Clone, PartialEq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<(usize, f64)>>,
}

impl UndirectedGraph {
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Neighbours of `node` sorted by index, with merged weights.
    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adj[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adj[node].len()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        let row = self.adj.get(a)?;
        row.binary_search_by_key(&b, |&(t, _)| t)
            .ok()
            .map(|i| row[i].1)
    }

    /// Reads the undirected graph as a symmetric directed one.
    pub fn as_directed(&self) -> DirectedGraph {
        let n = self.adj.len();
        DirectedGraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            out_adj: self.adj.clone(),
            in_adj: self.adj.clone(),
            edge_count: self.adj.iter().map(Vec::len).sum(),
        }
    }
}

/// Incremental graph construction enforcing the simple-graph invariants.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    index: HashMap<String, usize>,
    labels: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
    seen: HashSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize, edges: usize) -> Self {
        GraphBuilder {
            index: HashMap::with_capacity(nodes),
            labels: Vec::with_capacity(nodes),
            edges: Vec::with_capacity(edges),
            seen: HashSet::with_capacity(edges),
        }
    }

    /// Index of `name`, declaring it if new.
    pub fn add_node(&mut self, name: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        // A leading '#' would read back as a comment.
        if name.is_empty() || name.starts_with('#') || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidNodeName(name.to_string()));
        }
        let i = self.labels.len();
        self.index.insert(name.to_string(), i);
        self.labels.push(name.to_string());
        Ok(i)
    }

    pub fn add_edge(&mut self, source: &str, target: &str, weight: f64) -> Result<()> {
        let u = self.add_node(source)?;
        let v = self.add_node(target)?;
        self.add_edge_by_index(u, v, weight)
    }

    pub fn add_edge_by_index(&mut self, source: usize, target: usize, weight: f64) -> Result<()> {
        for index in [source, target] {
            if index >= self.labels.len() {
                return Err(Error::NodeOutOfRange {
                    index,
                    node_count: self.labels.len(),
                });
            }
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight(weight));
        }
        if source == target {
            return Err(Error::SelfLoop {
                line: None,
                node: self.labels[source].clone(),
            });
        }
        if !self.seen.insert((source, target)) {
            return Err(Error::DuplicateEdge {
                line: None,
                source_node: self.labels[source].clone(),
                target_node: self.labels[target].clone(),
            });
        }
        self.edges.push((source, target, weight));
        Ok(())
    }

    pub fn build(self) -> DirectedGraph {
        let n = self.labels.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v, w) in &self.edges {
            out_adj[u].push((v, w));
            in_adj[v].push((u, w));
        }
        for row in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            row.sort_unstable_by_key(|&(t, _)| t);
        }
        DirectedGraph {
            labels: self.labels,
            out_adj,
            in_adj,
            edge_count: self.edges.len(),
        }
    }
}

/// Parses the whitespace-separated edge-list format.
///
/// Each non-blank line is `source target`, `source target weight`, or
/// `NODE name`; lines whose first non-blank character is `#` are comments.
/// Nodes get dense indices in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut b = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let (source, target, weight) = match tokens.as_slice() {
            [kw, name] if *kw == NODE_KEYWORD => {
                b.add_node(name).map_err(|e| parse_err(e.to_string()))?;
                continue;
            }
            [s, t] => (*s, *t, 1.0),
            [s, t, w] => {
                let w: f64 = w
                    .parse()
                    .map_err(|_| parse_err(format!("invalid weight `{w}`")))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(parse_err(format!(
                        "edge weight {w} must be finite and strictly positive"
                    )));
                }
                (*s, *t, w)
            }
            _ => {
                return Err(parse_err(format!(
                    "expected 2 or 3 tokens, found {}",
                    tokens.len()
                )))
            }
        };
        b.add_edge(source, target, weight).map_err(|e| match e {
            Error::SelfLoop { node, .. } => Error::SelfLoop {
                line: Some(line_no),
                node,
            },
            Error::DuplicateEdge {
                source_node,
                target_node,
                ..
            } => Error::DuplicateEdge {
                line: Some(line_no),
                source_node,
                target_node,
            },
            other => parse_err(other.to_string()),
        })?;
    }
    Ok(b.build())
}
