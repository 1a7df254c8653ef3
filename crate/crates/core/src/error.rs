use thiserror::Error;

/// Errors raised by field, digraph, Waring, walk and curve operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field or digraph of order {q} exceeds the cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what} = {value} is outside the allowed range {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },
    #[error("field code {code} is not an element of GF({q})")]
    InvalidElement { code: u32, q: u32 },
    #[error("f-table has {got} entries, expected {expected}")]
    BadTable { got: usize, expected: usize },
    #[error("operation requires a monomial digraph")]
    NotMonomial,
    #[error("automorphism scalar must be nonzero")]
    ZeroScalar,
    #[error("operation requires a prime field, got GF({0})")]
    NotPrimeField(u32),
    #[error("neither gcd(m, q-1) nor gcd(n, q-1) equals 1")]
    GcdHypothesisFails,
    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("m = n = p-1: no walk of length 2p-2 exists between every pair")]
    EqualityCase,
    #[error("alternating length {k} is below 2*delta = {needed}")]
    KTooSmall { k: usize, needed: usize },
    #[error("Waring number gamma({r}, {q}) does not exist")]
    NotExists { r: u32, q: u32 },
    #[error("characteristic {p} divides n = {n}")]
    CharacteristicDividesN { p: u32, n: u32 },
    #[error("curve coefficients a and c must be nonzero")]
    ZeroCoefficient,
    #[error("constructed certificate failed validation: {0}")]
    CertificateRejected(String),
}

pub type Result<T> = std::result::Result<T, Error>;
