use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{n} exceeds the cap of {cap} elements")]
    DegreeTooLarge { p: u64, n: u32, cap: u64 },
    #[error("field elements belong to different fields")]
    FieldMismatch,
    #[error("arguments must be positive, got ({0}, {1})")]
    NonPositive(i64, i64),
    #[error("invalid dimension profile: {0}")]
    InvalidProfile(String),
    #[error("operands have different dimension profiles")]
    ProfileMismatch,
    #[error("entry ({row}, {col}) = {value} is not a multiple of {divisor} modulo {modulus}")]
    NotInRing { row: usize, col: usize, value: i64, divisor: u64, modulus: u64 },
    #[error("entry ({row}, {col}) = {value} is outside the canonical range [0, {bound})")]
    OutOfRange { row: usize, col: usize, value: u64, bound: u64 },
    #[error("image of generator {generator} violates the order constraint")]
    NotAnEndomorphism { generator: usize },
    #[error("expected {expected} entries, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("subsystem indices must satisfy i < j < k, got ({i}, {j}) with k = {k}")]
    IndexOrder { i: usize, j: usize, k: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexRange { index: usize, limit: usize },
    #[error("determinant {det} is not 1 modulo {modulus}")]
    NotUnimodular { det: i64, modulus: u64 },
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("search space of {size} exceeds the limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("operator is not a scalar multiple of a single Weyl operator")]
    NotAWeylWord,
    #[error("conjugation does not map generator A_{generator} to a Weyl word")]
    NotInNormalizer { generator: usize },
    #[error("dimensions must all equal one prime, got {0:?}")]
    NotEqualPrimeDims(Vec<u64>),
    #[error("combination {0:?} of the structure matrices is singular")]
    RegularityFailure(Vec<u64>),
    #[error("unitarity check failed with residual {0:e}")]
    NotUnitary(f64),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
