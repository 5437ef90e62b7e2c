use thiserror::Error;

use crate::valfield::Domain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("value {0} is not integral at the residue characteristic")]
    NotIntegral(String),
    #[error("Hensel condition failed: {0}")]
    HenselConditionFailed(String),
    #[error("the map is constant")]
    ConstantMap,
    #[error("the map is inseparable (its Wronskian vanishes identically)")]
    InseparableMap,
    #[error("zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("distance to a type I point is infinite")]
    InfiniteDistance,
    #[error("pole of the map inside the disk; change coordinates first")]
    PoleInDisk,
    #[error("undecidable over the base field: {0}")]
    Undecidable(String),
    #[error("probe point does not lie in the closed disk of the base point")]
    ProbeNotInBall,
    #[error("no critical point available at or movable to infinity over the base field")]
    ConventionUnsatisfiable,
    #[error("theorem requires characteristic zero")]
    CharacteristicP,
    #[error("{0} is not a critical point")]
    NotCritical(String),
    #[error("normalization violated: {0}")]
    NormalizationViolated(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainMismatch(..) => "DomainMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotPrime(_) => "NotPrime",
            Error::NotIntegral(_) => "NotIntegral",
            Error::HenselConditionFailed(_) => "HenselConditionFailed",
            Error::ConstantMap => "ConstantMap",
            Error::InseparableMap => "InseparableMap",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InfiniteDistance => "InfiniteDistance",
            Error::PoleInDisk => "PoleInDisk",
            Error::Undecidable(_) => "Undecidable",
            Error::ProbeNotInBall => "ProbeNotInBall",
            Error::ConventionUnsatisfiable => "ConventionUnsatisfiable",
            Error::CharacteristicP => "CharacteristicP",
            Error::NotCritical(_) => "NotCritical",
            Error::NormalizationViolated(_) => "NormalizationViolated",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Schema(_) => "SchemaError",
            Error::Io(_) => "IOError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
