use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed scalar literal {0:?}")]
    ScalarLiteral(String),

    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),

    #[error("pole count mismatch: {0} vs {1}")]
    PoleCountMismatch(usize, usize),

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("zero tensor")]
    ZeroTensor,

    #[error("degree-0 input")]
    DegreeZero,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is rank deficient")]
    RankDeficient,

    #[error("only the trivial solution exists")]
    OnlyTrivial,

    #[error("tensor is not decomposable")]
    NotDecomposable,

    #[error("normalizing entry is zero: {0}")]
    ZeroNormalizer(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("genericity failure: {0}")]
    NonGeneric(String),

    #[error("line lies in the singular set")]
    LineInSingularSet,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("cycle rejected: {0}")]
    CycleInvalid(String),

    #[error("invalid scenario: {}", .0.join("; "))]
    Scenario(Vec<String>),

    #[error("unknown name {0:?}")]
    UnknownName(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
