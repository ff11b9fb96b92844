use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}self-loop on node `{node}` is not allowed", at_line(*.line))]
    SelfLoop { line: Option<usize>, node: String },

    #[error("{}duplicate edge `{source_node}` -> `{target_node}`", at_line(*.line))]
    DuplicateEdge {
        line: Option<usize>,
        source_node: String,
        target_node: String,
    },

    #[error("invalid node name `{0}`")]
    InvalidNodeName(String),

    #[error("edge weight {0} must be finite and strictly positive")]
    InvalidWeight(f64),

    #[error("node index {index} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("edge {source_index} -> {target_index} does not exist")]
    MissingEdge {
        source_index: usize,
        target_index: usize,
    },

    #[error("partition covers {found} nodes but the graph has {expected}")]
    PartitionMismatch { expected: usize, found: usize },

    #[error("node set must not be empty")]
    EmptyNodeSet,

    #[error("modularity is undefined on a graph without edges")]
    EdgelessGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("network `{id}`: {source}")]
    Network {
        id: String,
        #[source]
        source: Box<Error>,
    },
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_network(self, id: &str) -> Self {
        Error::Network {
            id: id.to_string(),
            source: Box::new(self),
        }
    }
}
