use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree {given} is too low, at least {required} is needed")]
    DegreeTooLow { required: u32, given: u32 },

    #[error("multi-index {index:?} has total degree {found}, expected {expected}")]
    IndexDegree {
        index: Vec<u32>,
        expected: u32,
        found: u32,
    },

    #[error("supremum of constraint {index} is negative ({value})")]
    NegativeSup { index: usize, value: String },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("linear program is unbounded (the assessments are inconsistent)")]
    Unbounded,

    #[error("no grid model satisfies the assessments")]
    NoGridModel,

    #[error("likelihood has zero prevision under the state")]
    ZeroLikelihood,

    #[error("invalid likelihood: {0}")]
    InvalidLikelihood(String),

    #[error("invalid moment state: {0}")]
    InvalidState(String),

    #[error("invalid mixture: {0}")]
    InvalidMixture(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("certificate does not re-expand to its target: {0}")]
    CertificateMismatch(String),

    #[error("linear program anomaly: {0}")]
    LpAnomaly(String),

    #[error("parse error: {0}")]
    Parse(String),
}
