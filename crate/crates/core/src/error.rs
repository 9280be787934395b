use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid pair: {0}")]
    InvalidPair(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("could not parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("factor index {index} out of range for a pair with {factors} factors")]
    FactorIndex { index: usize, factors: usize },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("point sampling failed after {retries} retries (field of size {prime} too small?)")]
    DegenerateField { prime: u64, retries: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),

    #[error("missing parameter {0:?}")]
    MissingParam(&'static str),

    #[error("r = {0} is outside the tabulated range 2..=7")]
    OutOfTable(u32),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
}
