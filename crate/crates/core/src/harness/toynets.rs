//! The three small directed test networks shipped with the crate.
//!
//! Each has at least two non-trivial strongly connected components plus
//! acyclic periphery; the topology is described in each file's header.

use crate::error::Result;
use crate::graph::{parse_edge_list, DirectedGraph};

pub const TOYNET_SOURCES: [(&str, &str); 3] = [
    ("toynet1", include_str!("../../data/toynet1.txt")),
    ("toynet2", include_str!("../../data/toynet2.txt")),
    ("toynet3", include_str!("../../data/toynet3.txt")),
];

/// `(id, graph)` for every bundled network.
pub fn toynets() -> Vec<(String, DirectedGraph)> {
    TOYNET_SOURCES
        .iter()
        .map(|(id, text)| {
            let g = parse_edge_list(text).expect("bundled network parses");
            (id.to_string(), g)
        })
        .collect()
}

pub fn toynet(id: &str) -> Result<DirectedGraph> {
    let (_, text) = TOYNET_SOURCES
        .iter()
        .find(|(name, _)| *name == id)
        .ok_or_else(|| crate::Error::InvalidParameter(format!("no bundled network `{id}`")))?;
    parse_edge_list(text)
}
