//! Node-to-community assignments.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

/// Assignment of every node to exactly one community.
///
/// Community ids are canonical: `0..community_count`, numbered in order of
/// first appearance when scanning nodes by index. Two partitions that group
/// nodes identically therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Canonicalizes arbitrary per-node labels.
    pub fn from_labels<L: Hash + Eq>(labels: impl IntoIterator<Item = L>) -> Self {
        let mut ids: HashMap<L, usize> = HashMap::new();
        let assignment: Vec<usize> = labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            community_count: ids.len(),
            assignment,
        }
    }

    /// Every node in one community.
    pub fn single(node_count: usize) -> Self {
        Partition {
            assignment: vec![0; node_count],
            community_count: usize::from(node_count > 0),
        }
    }

    /// Every node in its own community.
    pub fn singletons(node_count: usize) -> Self {
        Partition {
            assignment: (0..node_count).collect(),
            community_count: node_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn community_of(&self, node: usize) -> usize {
        self.assignment[node]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of each community, ascending, indexed by community id.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.community_count];
        for (node, &c) in self.assignment.iter().enumerate() {
            out[c].push(node);
        }
        out
    }

    /// Errors unless the partition covers exactly the graph's nodes.
    pub fn check_covers(&self, g: &DirectedGraph) -> Result<()> {
        if self.node_count() == g.node_count() {
            Ok(())
        } else {
            Err(Error::PartitionMismatch {
                expected: g.node_count(),
                found: self.node_count(),
            })
        }
    }

    /// True when every community of `self` lies inside one community of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.node_count() != coarser.node_count() {
            return false;
        }
        let mut image = vec![usize::MAX; self.community_count];
        self.assignment
            .iter()
            .zip(&coarser.assignment)
            .all(|(&fine, &coarse)| {
                let slot = &mut image[fine];
                if *slot == usize::MAX {
                    *slot = coarse;
                }
                *slot == coarse
            })
    }

    /// `node_label,community_id` lines, one per node in index order.
    pub fn to_csv(&self, g: &DirectedGraph) -> String {
        let mut out = String::new();
        for (node, &c) in self.assignment.iter().enumerate() {
            let _ = writeln!(out, "{},{c}", g.label(node));
        }
        out
    }

    /// Reads `node_label,community_id` lines against `g`.
    ///
    /// Community ids are arbitrary tokens and get canonicalized. Every node
    /// of `g` must appear exactly once. Blank lines and `#` comments are
    /// skipped.
    pub fn parse_csv(g: &DirectedGraph, text: &str) -> Result<Self> {
        let index: HashMap<&str, usize> = g
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut labels: Vec<Option<String>> = vec![None; g.node_count()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            // Node labels may contain commas; community ids may not.
            let (node, community) = line
                .rsplit_once(',')
                .ok_or_else(|| err("expected `node_label,community_id`".into()))?;
            let community = community.trim();
            if community.is_empty() {
                return Err(err("empty community id".into()));
            }
            let &n = index
                .get(node.trim())
                .ok_or_else(|| err(format!("unknown node `{}`", node.trim())))?;
            if labels[n].replace(community.to_string()).is_some() {
                return Err(err(format!("node `{}` assigned twice", node.trim())));
            }
        }
        let missing = labels.iter().filter(|l| l.is_none()).count();
        if missing > 0 {
            return Err(Error::PartitionMismatch {
                expected: g.node_count(),
                found: g.node_count() - missing,
            });
        }
        Ok(Partition::from_labels(labels.into_iter().map(Option::unwrap)))
    }
}
