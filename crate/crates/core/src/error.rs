use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("operation requires a nonempty graph")]
    EmptyGraph,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("vertex set {0} is not a clique")]
    NotAClique(String),
    #[error("character is not an epimorphism onto Z_p (identically zero)")]
    NotEpimorphism,
    #[error("character is missing a value for vertex `{0}`")]
    MissingValue(String),
    #[error("matrix has {found} columns, graph has {expected} vertices")]
    ColumnMismatch { expected: usize, found: usize },
    #[error("quotient is finite: defining matrix has rank 0 over the rationals")]
    FiniteQuotient,
    #[error("invalid graph of groups: {0}")]
    InvalidGraphOfGroups(String),
    #[error("index {index} is not a positive multiple of the vertex-order lcm {lcm}")]
    IndexNotMultiple { index: u64, lcm: u64 },
    #[error("free rank 1 - m*chi = {0} is not an integer")]
    NonIntegralRank(String),
    #[error("{count} vertices exceed the configured cap of {cap}")]
    CapExceeded { count: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
