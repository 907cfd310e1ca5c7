use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("grade {grade} is smaller than the degree {degree}")]
    GradeTooSmall { grade: usize, degree: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("block list flavor mismatch: expected {expected}")]
    FlavorMismatch { expected: &'static str },
    #[error("cannot materialize a block at a symbolic eigenvalue")]
    SymbolicEigenvalue,
    #[error("parameter out of domain: {0}")]
    ParamDomain(String),
    #[error("odd grade required; pad even-grade polynomials first (got grade {0})")]
    EvenGrade(usize),
    #[error("rank is zero")]
    ZeroRank,
    #[error("blocks consumed by the rule are missing: {0}")]
    MissingBlocks(String),
    #[error("rule side condition violated: {0}")]
    SideConditionViolated(String),
    #[error("paired application is not skew-realizable")]
    PairingBroken,
    #[error("unsupported blocks for the block-sum codimension: {0}")]
    UnsupportedBlocks(String),
    #[error("tangent representation for n = {n} exceeds the size guard {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("sampling gave up after {0} attempts")]
    AttemptsExhausted(usize),
    #[error("floating-point rank verification failed: {0}")]
    RankVerificationFailed(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}
