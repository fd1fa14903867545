use thiserror::Error;

/// Errors raised by ring, module and verifier operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("closure exceeded the size cap of {cap} elements")]
    SizeCapExceeded { cap: usize },
    #[error("invalid ambient component: {0}")]
    InvalidComponent(String),
    #[error("element does not belong to the ambient or ring: {0}")]
    InvalidElement(String),
    #[error("owner ring is not a subring of the carrier")]
    NotSubring,
    #[error("operands belong to different extensions")]
    MixedOwners,
    #[error("ideal is not maximal")]
    NotMaximal,
    #[error("ideal is not prime: {0}")]
    NotPrime(String),
    #[error("submodule is not invertible")]
    NotInvertible,
    #[error("cannot factor {value}: cofactor exceeds trial-division bound {bound}")]
    FactorBoundExceeded { value: u128, bound: u64 },
    #[error("fractional ideal is not integral")]
    NotIntegral,
    #[error("valuation table is not total: missing value for {0}")]
    PartialAssignment(String),
    #[error("family is not pairwise comaximal or a member does not contain the base ideal: {0}")]
    NotComaximal(String),
    #[error("family member is not B-invertible: {0}")]
    NotInvertibleMember(String),
    #[error("no finitely generated B-regular subideal found")]
    NoRegularSubideal,
    #[error("extension is not almost Prüfer")]
    NotAlmostPrufer,
    #[error("ring is not a Prüfer ring")]
    NotPruferRing,
    #[error("distinguished subset is empty")]
    EmptyGamma,
    #[error("poset hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("enumeration bound {0} yields no proper regular ideals")]
    BoundTooSmall(u64),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
