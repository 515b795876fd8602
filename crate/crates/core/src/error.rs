use thiserror::Error;

use crate::hypercube::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..=64")]
    InvalidDimension(u32),

    #[error("{u} and {v} are not adjacent")]
    NotAdjacent { u: Vertex, v: Vertex },

    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    #[error("{set} is not contained in [{half}]")]
    NotInLowerHalf { set: Vertex, half: u32 },

    #[error("{set} uses elements outside [{bound}]")]
    ElementOutOfRange { set: Vertex, bound: u32 },

    #[error("walk from {start} ends at {end} instead of returning to its start")]
    NotClosed { start: Vertex, end: Vertex },

    #[error("walk revisits {vertex} at step {step}")]
    NotSimple { vertex: Vertex, step: usize },

    #[error("dimension {0} is odd; Q_n has a cycle decomposition only for even n")]
    OddDimension(u32),

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u32),

    #[error("generator {generator} is not an even subset of [{bound}]")]
    GeneratorOutOfRange { generator: Vertex, bound: u32 },

    #[error("coset representatives {first} and {second} lie in the same coset")]
    CosetCollision { first: Vertex, second: Vertex },

    #[error("cosets do not cover the group: {cosets} cosets of order 2^{rank}, group order 2^{group_rank}")]
    CosetsIncomplete {
        cosets: usize,
        rank: u32,
        group_rank: u32,
    },

    #[error("generated subgroup has rank {actual}, expected {expected}")]
    RankMismatch { expected: u32, actual: u32 },

    #[error("direction {dir} is outside the lower half [{half}]")]
    DirectionOutOfHalf { dir: u32, half: u32 },

    #[error("index out of range: {0}")]
    RangeViolation(String),

    #[error("Q_{n} exceeds the configured envelope (n <= {cap})")]
    ResourceCap { n: u32, cap: u32 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("input decomposition violates the lift precondition: {0}")]
    PreconditionViolation(String),

    #[error("path length {r} must be a proper divisor of the cycle length {len}")]
    NotADivisor { r: u32, len: u32 },

    #[error("refusing to serialize a decomposition without cycles")]
    EmptyDecomposition,

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("unsupported format version `{0}`")]
    VersionMismatch(String),

    #[error("write failed: {0}")]
    Sink(#[from] std::io::Error),
}
