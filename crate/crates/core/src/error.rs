use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),

    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),

    #[error("the associated complex is undefined for the full simplex")]
    FullSimplex,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a pseudomanifold: {0}")]
    NotPseudomanifold(String),

    #[error("the pseudomanifold is not orientable")]
    NonOrientable,

    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),

    #[error("characteristic condition fails at facet {facet:?}: determinant {det}")]
    NotCharacteristic { facet: Vec<usize>, det: BigInt },

    #[error("vector {0:?} pairs to zero with some edge vector")]
    NotGeneric(Vec<i64>),

    #[error("no generic vector found within radius {0}")]
    SearchExhausted(i64),

    #[error("element is not a cocycle")]
    NotCocycle,

    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
