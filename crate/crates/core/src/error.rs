use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoloError {
    #[error("duplicate prime {0} in CRT input")]
    DuplicatePrime(u64),
    #[error("rational reconstruction failed")]
    NoReconstruction,
    #[error("operators live in different Ore algebras")]
    KindMismatch,
    #[error("division by the zero operator")]
    DivisionByZeroOperator,
    #[error("not enough data: {0}")]
    NotEnoughData(String),
    #[error("seed is not a simple root of P(0, y)")]
    SingularSeed,
    #[error("polynomial is not squarefree in y")]
    NotSquarefree,
    #[error("equation is already homogeneous")]
    AlreadyHomogeneous,
    #[error("geometric ratio must be nonzero")]
    ZeroRatio,
    #[error("inconsistent terms: {0}")]
    InconsistentTerms(String),
    #[error("unlucky primes exhausted")]
    UnluckyPrimeExhaustion,
    #[error("reconstruction did not stabilise")]
    ReconstructionFailed,
    #[error("missing initial terms at indices {0:?}")]
    MissingInitialTerms(Vec<usize>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("indices are not contiguous near line {0}")]
    NonContiguousIndices(usize),
    #[error("no relation found")]
    NoRelation,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, HoloError>;

impl HoloError {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            HoloError::NoRelation => 2,
            HoloError::ParseError { .. } | HoloError::NonContiguousIndices(_) => 3,
            HoloError::Internal(_)
            | HoloError::UnluckyPrimeExhaustion
            | HoloError::ReconstructionFailed
            | HoloError::NoReconstruction => 5,
            _ => 4,
        }
    }
}
