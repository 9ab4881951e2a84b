use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0 has no prime factorization")]
    FactorZero,
    #[error("{0} is not a prime power")]
    NotPrimePower(BigUint),
    #[error("prime-power decomposition requires n >= 2, got {0}")]
    TooSmall(BigUint),
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field characteristic {0} does not fit the machine-word element representation")]
    CharacteristicTooLarge(BigUint),
    #[error("could not factor {0} within the desk-scale budget")]
    FactorizationTooHard(BigUint),
    #[error("operands belong to different fields")]
    MixedContext,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("invalid field element {text:?}: {reason}")]
    InvalidElement { text: String, reason: String },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("F_{sub} is not a subfield of F_{field}")]
    NotSubfield { sub: String, field: String },
    #[error("binomial degree must be at least 1")]
    ZeroBinomialDegree,
    #[error("x^{n} - g is not irreducible over the base field")]
    NotIrreducible { n: u64 },
    #[error("tower degrees must be a nonempty strictly increasing divisibility chain: {0}")]
    NotAChain(String),
    #[error("total degree {total} exceeds the desk-scale bound {bound}")]
    DeskScaleExceeded { total: u64, bound: u64 },
    #[error("family has no entry with index {0}")]
    MissingIndex(u64),
    #[error("family is empty")]
    EmptyFamily,
    #[error("paper-example family is capped at {max} entries, requested {requested}")]
    FamilySizeBound { requested: u64, max: u64 },
    #[error("no prime = 1 mod {modulus} among the first {cutoff} candidates")]
    SearchCutoff { modulus: BigUint, cutoff: u64 },
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("irreducibility criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("equivalence violated at index {k}: {detail}")]
    EquivalenceViolation { k: u64, detail: String },
}

impl Error {
    /// True for errors that indicate a defect in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CriteriaDisagree(_) | Error::EquivalenceViolation { .. }
        )
    }
}
