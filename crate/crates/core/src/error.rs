use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidRootSystem(String),

    #[error("weight {weight} does not belong to root system {expected}")]
    SystemMismatch { weight: String, expected: String },

    #[error("weight must be dominant integral, got {0}")]
    NotDominantIntegral(String),

    #[error("weight has {got} coordinates, root system has rank {rank}")]
    RankMismatch { got: usize, rank: usize },

    #[error("trivial weight is not allowed here")]
    TrivialWeight,

    #[error("restriction image of fundamental weight {index} is not integral: {image}")]
    NonIntegralRestriction { index: usize, image: String },

    #[error("compact generators not closed under bracket: [{left}, {right}] leaves the span (residual {residual:.3e})")]
    BracketClosure {
        left: String,
        right: String,
        residual: f64,
    },

    #[error("compact generators inconsistent: {0}")]
    GeneratorMismatch(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("unknown catalog pair `{0}`")]
    UnknownPair(String),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("embedding `{0}` carries no compact generators")]
    MissingGenerators(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
