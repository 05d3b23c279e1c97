use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("algebra is infinite-dimensional or exceeds the cap of {0} basis paths")]
    InfiniteDimensional(usize),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("bimodule algebras do not match the requested construction")]
    BimoduleAlgebraMismatch,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element is not a sum of distinguished idempotents")]
    NotDistinguishedSum,
    #[error("subspace is not a two-sided ideal")]
    NotTwoSidedIdeal,
    #[error("construction degenerates to the zero ring")]
    DegenerateQuotient,
    #[error("isomorphism search budget exceeded")]
    SearchBudgetExceeded,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("radical unavailable for this algebra")]
    RadicalUnavailable,
    #[error("algebra is not split basic: {0}")]
    NotSplitBasic(String),
    #[error("adjunction certification failed: {0}")]
    CertificationFailed(String),
    #[error("isomorphism search inconclusive")]
    InconclusiveSearch,
    #[error("not a torsion pair: {0}")]
    NotATorsionPair(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("splitting lift failed: {0}")]
    SplitLiftFailed(String),
    #[error("functor is not Giraud: {0}")]
    NotGiraud(String),
    #[error("extension of left recollement failed: {0}")]
    ExtensionFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("type cap reached but split certificate failed: {0}")]
    SplitExpectedButFailed(String),
    #[error("algebra does not have the required shape: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
