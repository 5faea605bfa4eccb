use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid tree depth {0}, must be at least 1")]
    InvalidDepth(usize),
    #[error("vertex at level {level} is a leaf of a depth-{depth} tree and carries no state")]
    LeafHasNoState { level: usize, depth: usize },
    #[error("vertex ({level}, {position}) does not exist")]
    InvalidVertex { level: usize, position: usize },
    #[error("level {level} out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },
    #[error("incompatible depths {0} and {1}")]
    IncompatibleDepths(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("block of size {size} at offset {offset} overflows degree {degree}")]
    BlockOverflow {
        size: usize,
        offset: usize,
        degree: usize,
    },
    #[error("blocks overlap on point {0}")]
    OverlappingBlocks(usize),
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation is not induced by a tree automorphism")]
    NotATreeAutomorphism,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("closure exceeded cap of {cap} elements ({partial} found)")]
    CapExceeded { cap: usize, partial: usize },
    #[error("generators do not lie in the ambient group")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {0} is not a 2-group")]
    NotATwoGroup(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
