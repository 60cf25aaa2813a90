use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// [`Error::Internal`] marks a broken invariant of the algorithm itself; every
/// other variant is a violated precondition on the caller's input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a valid prime: must be at least 2")]
    PrimeTooSmall(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("divisor must be monic and nonzero")]
    NonMonicDivisor,
    #[error("polynomial {poly} is not divisible by {p}^{k}")]
    NotDivisible { poly: String, p: String, k: u64 },
    #[error("operands live over different primes ({0} and {1})")]
    ModulusMismatch(String, String),
    #[error("operands live in different extension fields")]
    ContextMismatch,
    #[error("field modulus {0} is not monic irreducible of positive degree")]
    InvalidFieldModulus(String),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("polynomial {0} is constant")]
    Constant(String),
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expansions are taken with respect to different polynomials ({0} and {1})")]
    PhiMismatch(String, String),
    #[error("leading expansion coefficient {0} is divisible by p")]
    NonUnitLeading(String),
    #[error(
        "last expansion coefficient is zero: the slope through (s, 0) and (L, v_p(a_L)) \
         needs a_L != 0 (phi divides the polynomial over the integers)"
    )]
    ZeroTail,
    #[error("slope condition fails at index {witness}")]
    SlopeConditionViolated { witness: usize },
    #[error("{phi} does not divide the reduction of {poly}")]
    NotAFactor { phi: String, poly: String },
    #[error("{phi} divides the reduction with multiplicity {found}, not {expected}")]
    MultiplicityMismatch {
        phi: String,
        expected: usize,
        found: usize,
    },
    #[error("{0} is not squarefree over the rationals, so it is reducible")]
    NotSquarefree(String),
    #[error("{poly} is divisible by {phi} over the integers, so it is reducible")]
    ReducibleOverIntegers { poly: String, phi: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
