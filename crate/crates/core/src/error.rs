use thiserror::Error;

use crate::flatness::FlatnessClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("generator set is empty")]
    EmptyGenerators,

    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i128),

    #[error("generators have gcd {gcd}, so they do not generate a numerical semigroup")]
    NotCofinite { gcd: u64 },

    #[error("sieve bound {requested} exceeds the configured limit of {limit} bits")]
    SieveTooLarge { requested: u128, limit: u64 },

    #[error("{0} is not a member of the semigroup")]
    NotAMember(u64),

    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: i128,
        got: i128,
    },

    #[error("invalid Seifert leg ({alpha},{omega}): {reason}")]
    InvalidLeg {
        alpha: i128,
        omega: i128,
        reason: &'static str,
    },

    #[error("central weight b0 must be at least 1, got {0}")]
    InvalidCentralWeight(i128),

    #[error("orbifold Euler number {0} is not negative; the graph is not negative definite")]
    NotNegativeDefinite(String),

    #[error("the values {0:?} are not pairwise coprime")]
    NotPairwiseCoprime(Vec<i128>),

    #[error("multiplicity {mult} is not coprime to alpha {alpha}")]
    MultiplicityNotCoprime { alpha: i128, mult: i128 },

    #[error("semigroup is {0}, the closed Frobenius formula needs a flat semigroup")]
    NotFlat(FlatnessClass),

    #[error("generator set is not flat at pivot {pivot} (s-hat = {s_hat})")]
    NotFlatAtPivot { pivot: usize, s_hat: u64 },

    #[error("pivot index {index} out of range for {len} generators")]
    PivotOutOfRange { index: usize, len: usize },

    #[error("the flat-quotient construction needs pairwise coprime alphas with gcd(alpha_i, s_i) = 1: {0}")]
    CoprimalityRequired(String),

    #[error("no complete intersection equations for this presentation: {0}")]
    IcisUnavailable(&'static str),

    #[error("singular intersection matrix")]
    SingularMatrix,

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors caused by malformed input text rather than by the math.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
