//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or transforming graphs.
///
/// All arithmetic is exact; any computation that would leave the `i64`
/// (or intermediate `i128`) range reports [`Error::Overflow`] instead of
/// wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("continued fraction term {term} at position {index} must be at least 2")]
    NcfTail { index: usize, term: i64 },

    #[error("continued fraction of {a}/{b} needs a positive denominator")]
    NcfDenominator { a: i64, b: i64 },

    #[error("continued fraction of {a}/{b} needs coprime arguments")]
    NcfNotCoprime { a: i64, b: i64 },

    #[error("identifier {0:?} is declared twice")]
    DuplicateId(String),

    #[error("identifier {0:?} is empty or contains characters outside [A-Za-z0-9._+~-]")]
    InvalidId(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("edge {0:?} -- {1:?} is a loop")]
    LoopEdge(String, String),

    #[error("edge {edge_end:?} -- {other:?} gives arrowhead {edge_end:?} a second incidence")]
    EdgeToArrow { edge_end: String, other: String },

    #[error("arrowhead {0:?} attaches to unknown vertex {1:?}")]
    ArrowAttach(String, String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is disconnected; {0:?} is not reachable from the first vertex")]
    Disconnected(String),

    #[error("multiplicity table misses an entry for {0:?}")]
    MissingMult(String),

    #[error("multiplicity table names {0:?}, which is not in the graph")]
    StrayMult(String),

    #[error("vertex {id:?} needs {family} >= 1, got {value}")]
    VertexMult {
        id: String,
        family: &'static str,
        value: i64,
    },

    #[error("{kind}-arrowhead {id:?} needs (m, l) with {expect}, got ({m}, {l})")]
    ArrowMult {
        id: String,
        kind: char,
        expect: &'static str,
        m: i64,
        l: i64,
    },

    #[error("multiplicity system misses an entry for {0:?}")]
    MissingSystemValue(String),

    #[error("intersection matrix is singular")]
    SingularMatrix,

    #[error("multiplicity of {id:?} solves to the non-integer {num}/{den}")]
    NonIntegralSolution { id: String, num: i64, den: i64 },

    #[error("multiplicity of {id:?} solves to the negative value {value}")]
    NegativeSolution { id: String, value: i64 },

    #[error("gen tab needs 2 <= b <= a, got a = {a}, b = {b}")]
    GenTabRange { a: i64, b: i64 },

    #[error("component {0:?} has no boundary edges")]
    NoBoundary(String),

    #[error("component {id:?}: {what} = {num}/{den} is not an integer")]
    NonIntegralInvariant {
        id: String,
        what: &'static str,
        num: i64,
        den: i64,
    },

    #[error("component {id:?}: genus solves to the negative value {value}")]
    NegativeGenus { id: String, value: i64 },

    #[error("input graph is unbalanced at {count} vertex/family pairs, first at {first:?}")]
    Unbalanced { count: usize, first: String },

    #[error("input graph has no f-arrowhead")]
    NoFArrow,

    #[error("chain solve: {numerator} is not divisible by {denominator}")]
    ChainDivisibility { numerator: i64, denominator: i64 },

    #[error("isomorphism search over {size} vertices exceeds the limit of {limit}")]
    IsoTooLarge { size: usize, limit: usize },

    #[error("vertex {id:?} is not a blow-down candidate: {reason}")]
    BlowDownIneligible { id: String, reason: &'static str },

    #[error("constructed output failed verification: {0}")]
    VerificationFailed(String),

    #[error("piece tag {0:?} is malformed")]
    BadPieceTag(String),

    #[error("edge sign must be 1 or -1, got {0}")]
    BadSign(i64),

    #[error("json: {0}")]
    Json(String),
}
