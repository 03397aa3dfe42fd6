use thiserror::Error;

use crate::cover::Violation;

pub type Result<T, E = DpError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum DpError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("search exceeded the node cap of {cap}")]
    NodeCap { cap: u64 },
    #[error("cover family of size {count} exceeds the cap of {cap}")]
    CoverCap { count: String, cap: u128 },
    #[error("{count} candidate assignments exceed the cap of {cap}")]
    AssignmentCap { count: String, cap: usize },

    #[error("invalid cover: {}", summarize(.0))]
    InvalidCover(Vec<Violation>),
    #[error("list of base vertex {0} is empty")]
    EmptyList(usize),
    #[error("cover vertex {0} does not exist")]
    UnknownCoverVertex(usize),
    #[error("lists must all have size {expected}; vertex {vertex} has {found}")]
    NonUniformLists { expected: usize, vertex: usize, found: usize },
    #[error("matching on base edge {0}-{1} is not perfect")]
    MatchingNotPerfect(usize, usize),
    #[error("chosen cover vertices {0} and {1} are adjacent in H")]
    ChosenNotIndependent(usize, usize),
    #[error("two chosen cover vertices lie in the list of base vertex {0}")]
    ChosenSameList(usize),
    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),
    #[error("cover carries no list-coloring provenance")]
    NoProvenance,
    #[error("coloring is improper on edge {0}-{1}")]
    ImproperColoring(usize, usize),
    #[error("color {color} is not in the list of vertex {vertex}")]
    OffList { vertex: usize, color: usize },
    #[error("coloring has {found} entries, expected {expected}")]
    ColoringLength { expected: usize, found: usize },

    #[error("vertex {vertex} has a list of size {size}, the degeneracy order needs {needed}")]
    ListTooShort { vertex: usize, size: usize, needed: usize },
    #[error("invalid degeneracy order: {0}")]
    InvalidOrder(String),
    #[error("list size k must be at least 1")]
    ZeroListSize,

    #[error("the lower-bound construction needs an even n >= 6, got {0}")]
    UnsupportedN(usize),
    #[error("expected {expected} list sizes, got {found}")]
    MissingListSize { expected: usize, found: usize },
    #[error("|L(a)| is required when |A| > 0")]
    MissingAListSize,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Parse(String),
}

fn summarize(violations: &[Violation]) -> String {
    match violations {
        [] => "no violations".to_string(),
        [v] => v.to_string(),
        [v, rest @ ..] => format!("{v} (and {} more)", rest.len()),
    }
}
