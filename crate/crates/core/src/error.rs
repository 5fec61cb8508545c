use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("denominator vanishes under substitution")]
    VanishingDenominator,
    #[error("pole at q=1")]
    PoleAtOne,
    #[error("negative q-integer [{0}]")]
    NegativeQInt(i64),
    #[error("degenerate modulus")]
    DegenerateModulus,
    #[error("not invertible")]
    NotInvertible,
    #[error("q is not invertible modulo the modulus")]
    QNotInvertible,
    #[error("modulus meets denominator")]
    ModulusMeetsDenominator,
    #[error("antisymmetry hypothesis fails at index {0}")]
    Antisymmetry(usize),
    #[error("unknown entry id {0}")]
    UnknownId(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
