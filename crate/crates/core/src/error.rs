use thiserror::Error;

use crate::rootsys::{Family, Weight};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("type {family}{rank} is not a valid simple root system")]
    InvalidRank { family: Family, rank: usize },

    #[error("unknown root system family {0:?}")]
    UnknownFamily(String),

    #[error("ell = {ell} is smaller than the Coxeter number h = {h}")]
    EllTooSmall { ell: i64, h: i64 },

    #[error("weight {weight} has {got} coordinates, expected rank {rank}")]
    RankMismatch { weight: Weight, got: usize, rank: usize },

    #[error("positive root index {index} out of range ({count} positive roots)")]
    RootIndex { index: usize, count: usize },

    #[error("generator s{index} does not exist in rank {rank}")]
    GeneratorIndex { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} is not in the fundamental alcove")]
    NotInFundamentalAlcove(Weight),

    #[error("weight {weight} is ell-singular (lies on H(beta{beta}, {m}))")]
    Singular { weight: Weight, beta: usize, m: i64 },

    #[error("element is not in the affine Weyl group")]
    NotAffine,

    #[error("element {0} does not map the fundamental alcove to a dominant alcove")]
    NotDominantElement(String),

    #[error("weight {weight} has weyl dimension {dim}, above the limit {limit}")]
    TooLarge { weight: Weight, dim: u128, limit: u128 },

    #[error("coefficient overflow while accumulating {0}")]
    Overflow(&'static str),

    #[error("no base datum for the pair ({x}, {y})")]
    MissingRule { x: String, y: String },

    #[error("rule ({x}, {y}) requires ell >= {min_ell}")]
    RuleGuard { x: String, y: String, min_ell: i64 },

    #[error("labels lie in different linkage classes: {0} and {1}")]
    MixedLinkage(Weight, Weight),

    #[error("operation needs a nonempty object")]
    EmptyObject,

    #[error("{0}")]
    Precondition(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("strong regularity of {0} is undetermined")]
    Undetermined(String),

    #[error("lemma check failed: {0}")]
    Counterexample(String),

    #[error("table digest mismatch: stored {stored}, computed {computed}")]
    DigestMismatch { stored: String, computed: String },

    #[error("table metadata {found} does not match context {expected}")]
    TableMismatch { expected: String, found: String },

    #[error(transparent)]
    Parse(#[from] crate::cli::parse::ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
