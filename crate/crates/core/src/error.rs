use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("{value} is not a unit modulo {n}")]
    NotAUnit { value: u64, n: u64 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image sequence is not a bijection: {0}")]
    NotABijection(String),

    #[error("permutation does not fix 0 (maps 0 to {0})")]
    DoesNotFixZero(u32),

    #[error("group closure exceeded the element cap of {cap}")]
    ClosureCapExceeded { cap: usize },

    #[error("permutation order overflows 64 bits")]
    OrderOverflow,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("tuple ({i},{j},{k},{l}) is not admissible")]
    Inadmissible { i: u64, j: u64, k: u64, l: u64 },

    #[error("permutation is not a skew-morphism")]
    NotSkewMorphism,

    #[error("skew-morphism matches no admissible tuple")]
    NotClassifiable,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("oracle bound exceeded: n = {n}, bound = {bound}")]
    OracleBound { n: u32, bound: u32 },

    #[error(
        "oracle timed out after {elapsed_secs:.1}s: {completed_branches}/{total_branches} \
         top-level branches complete, {nodes} nodes visited, {found} maps found so far"
    )]
    Timeout { elapsed_secs: f64, completed_branches: usize, total_branches: usize, nodes: u64, found: usize },

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
