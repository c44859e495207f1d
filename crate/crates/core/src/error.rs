use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators {a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("generators must satisfy 2 <= a < b (got a={a}, b={b})")]
    BadOrder { a: u64, b: u64 },
    #[error("{0} is not an element of the semigroup")]
    NotMember(u128),
    #[error("argument out of domain: {0}")]
    OutOfDomain(String),
    #[error("residues differ: {0}")]
    ResidueMismatch(String),
    #[error("arithmetic overflow")]
    Overflow,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("sweep configuration rejected: {0}")]
    ConfigRejected(String),
    #[error("output sink failed: {0}")]
    SinkFailure(String),
    #[error("empty input")]
    EmptyInput,
    #[error("degenerate denominator in ratio")]
    DegenerateDenominator,

    #[error("coprimality violation: {0}")]
    CoprimalityViolation(String),
    #[error("incoherent residue profile: {0}")]
    IncoherentProfile(String),
    #[error("inverse missing: {0}")]
    InverseMissing(String),
    #[error("residue profile does not cover modulus {0}")]
    InsufficientProfile(u64),
    #[error("not subtractable")]
    NotSubtractable,
    #[error("not divisible by {0}")]
    NotDivisible(u64),
    #[error("unsupported in the symbolic model: {0}")]
    Unsupported(String),
    #[error("witness construction failed: {0}")]
    WitnessConstructionFailed(String),
    #[error("unsatisfiable family parameters: {0}")]
    UnsatisfiableSpec(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI on stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotCoprime { .. } => "RejectNotCoprime",
            Error::BadOrder { .. } => "RejectOrder",
            Error::NotMember(_) => "NotMember",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::ResidueMismatch(_) => "ResidueMismatch",
            Error::Overflow => "Overflow",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::Parse { .. } => "ParseError",
            Error::InvalidSystem(_) => "InvalidSystem",
            Error::ConfigRejected(_) => "ConfigRejected",
            Error::SinkFailure(_) => "SinkFailure",
            Error::EmptyInput => "EmptyInput",
            Error::DegenerateDenominator => "DegenerateDenominator",
            Error::CoprimalityViolation(_) => "CoprimalityViolation",
            Error::IncoherentProfile(_) => "IncoherentProfile",
            Error::InverseMissing(_) => "InverseMissing",
            Error::InsufficientProfile(_) => "InsufficientProfile",
            Error::NotSubtractable => "NotSubtractable",
            Error::NotDivisible(_) => "NotDivisible",
            Error::Unsupported(_) => "Unsupported",
            Error::WitnessConstructionFailed(_) => "WitnessConstructionFailed",
            Error::UnsatisfiableSpec(_) => "UnsatisfiableSpec",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
