use subfan_linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum SubfanError {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("word {0} is not a reduced expression of the longest element")]
    NotLongestReduced(String),
    #[error("{0} is not a Coxeter element")]
    NotCoxeterElement(String),
    #[error("{0} is not a positive root")]
    NotPositiveRoot(String),
    #[error("word {0} contains no reduced expression of the longest element")]
    NoReducedExpression(String),
    #[error("word has {0} letters; at most 64 are supported")]
    WordTooLong(usize),
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("invalid flip: {0}")]
    InvalidFlip(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("matrix is not a Gale dual of the ray matrix: {0}")]
    NotGaleDual(String),
    #[error("rays of facet {0:?} are not a basis")]
    NotABasis(Vec<usize>),
    #[error("fan has not been verified complete")]
    NotComplete,
    #[error("certificate does not belong to this fan: {0}")]
    CertificateMismatch(String),
    #[error("point is not generic: it lies on the boundary of cone {0:?}")]
    DegeneratePoint(Vec<usize>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = SubfanError> = std::result::Result<T, E>;
