use thiserror::Error;

/// Everything that can go wrong when building graphs or evaluating them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },

    #[error("duplicate arc ({from}, {to})")]
    DuplicateArc { from: u32, to: u32 },

    #[error("arc ({from}, {to}) has weight zero; omit absent arcs instead")]
    ZeroWeightArc { from: u32, to: u32 },

    #[error("self-loop at vertex {vertex} on a graph built without loop support")]
    SelfLoop { vertex: u32 },

    #[error("graph is not connected")]
    Disconnected,

    #[error("arc ({from}, {to}) has no symmetric partner of equal weight")]
    NonSymmetric { from: u32, to: u32 },

    #[error("({from}, {to}) is not an edge of the graph")]
    NonEdge { from: u32, to: u32 },

    #[error("vertex {vertex} is a cut vertex carrying a loop; the block sum does not apply")]
    LoopOnCutVertex { vertex: u32 },

    #[error("subgraph is not separable at vertex {vertex}: {reason}")]
    NotSeparable { vertex: u32, reason: String },

    #[error("{what} supports at most {bound} vertices, got {n}")]
    SizeBound {
        what: &'static str,
        n: usize,
        bound: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative clique would cover cut vertex {vertex}")]
    CutVertexInNegativeClique { vertex: u32 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
