use thiserror::Error;

/// Everything that can go wrong in this crate. Validation failures are
/// reported before any output is produced.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be a prime ≥ 7 (got {0})")]
    BadPrime(i64),

    #[error("{name} = {value} is out of range [{lo}, {hi}]")]
    OutOfRange { name: &'static str, value: i64, lo: i64, hi: i64 },

    #[error("(a, b) = ({a}, {b}) is not related to the character: need a + 2b ≡ 2c + k0 - 2 mod p - 1")]
    Unrelated { a: i64, b: i64 },

    #[error("weight {k} is not congruent to k0 = {k0} mod p - 1 or is below 2")]
    NotInClass { k: i64, k0: i64 },

    #[error("t must be a positive rational (got {0})")]
    NonPositiveT(String),

    #[error("s = {0} is not in the generic window S")]
    NotInS(i64),

    #[error("the evaluated valuation would be infinite")]
    InfiniteValuation,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("requested range [0, {requested}] exceeds the confirmed prefix [0, {confirmed}]")]
    Unconfirmed { requested: u64, confirmed: u64 },

    #[error("ℓ = {l} is outside [-{half}, {half}]")]
    EllOutOfRange { l: i64, half: i64 },

    #[error("digit sum of a negative integer ({0})")]
    NegativeDigits(i64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
