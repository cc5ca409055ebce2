use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("braid text parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("braid is not homogeneous: generator {0} occurs with both signs")]
    NonHomogeneous(u32),
    #[error("genus formula gave a non-integer value (2g = {0})")]
    NonIntegerGenus(i64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("diagram has no crossings")]
    EmptyDiagram,
    #[error("planar graph is disconnected ({0} components)")]
    DisconnectedGraph(usize),
    #[error("no spanning tree satisfies the edge constraints")]
    NoValidTree,
    #[error("generator {0} is missing from the braid word")]
    MissingGenerator(u32),
    #[error("cabled strand width {width} exceeds limit {limit}")]
    WidthLimit { width: usize, limit: usize },
    #[error("invalid level r = {0}: must be odd and at least 3")]
    InvalidLevel(u32),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("coloring has an empty block space")]
    EmptyBlockSpace,
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
}

pub type Result<T> = std::result::Result<T, Error>;
