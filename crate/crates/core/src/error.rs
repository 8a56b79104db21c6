use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("region {region} out of range (graph has {regions} regions)")]
    RegionOutOfRange { region: u32, regions: u32 },
    #[error("unknown node id {0}")]
    UnknownNode(u32),
    #[error("self-loop on node {0}")]
    SelfLoop(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("theory domain error: {0}")]
    Domain(String),
    #[error("empty scope: {0}")]
    EmptyScope(String),
    #[error("not enough points for a power-law fit: {found} in range, need at least {needed}")]
    TooFewPoints { found: usize, needed: usize },
}
