use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type {series}{rank}")]
    InvalidType { series: char, rank: usize },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartanMatrix(String),
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("word {0:?} is not a reduced word of the longest element")]
    NotLongest(Vec<usize>),
    #[error("words {0:?} and {1:?} do not represent the same Weyl group element")]
    NotSameElement(Vec<usize>, Vec<usize>),
    #[error("braid path search exhausted after visiting {0} words")]
    PathSearchExhausted(usize),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arity mismatch: expected {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("torus parameter must be nonzero")]
    ZeroTorusParameter,
    #[error("parameter {index} is not strictly positive")]
    NonPositiveParameter { index: usize },
    #[error("matrix is not in the big cell: leading principal minor {0} vanishes")]
    NotInG0(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("no matrix realization for {0}")]
    UnsupportedRealization(String),
    #[error("unsupported rank-2 braid move {0}")]
    UnsupportedRank2Type(String),
    #[error("symbolic solve stuck: {0}")]
    SolveStuck(String),
    #[error("expression is not certified subtraction-free: {0}")]
    NotSubtractionFree(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("subtraction is forbidden (byte {pos})")]
    SubtractionForbidden { pos: usize },
    #[error("evaluation point is not strictly positive at coordinate {0}")]
    NonPositivePoint(usize),
    #[error("division by zero during evaluation")]
    DivisionByZero,
    #[error("no crystal oracle for type {0}")]
    UnsupportedType(String),
    #[error("crystal exceeds the size bound of {0} vertices")]
    SizeBound(usize),
    #[error("string extraction did not end at the highest weight element")]
    ResidueNotHighest,
    #[error("expected a unique {0}")]
    NotUnique(&'static str),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("point {0:?} is outside the string cone of the module")]
    OutsideStringCone(Vec<i64>),
}
