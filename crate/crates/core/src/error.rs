use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("cannot parse polynomial `{text}`: {reason}")]
    Polynomial { text: String, reason: String },

    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("prime {0} exceeds the supported range (p < 2^31)")]
    PrimeTooLarge(u64),

    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),

    #[error("variable `{name}` has invalid degree {degree} (must be >= 1)")]
    BadVariableDegree { name: String, degree: i64 },

    #[error("unknown variable `{name}` in `{text}`")]
    UnknownVariable { name: String, text: String },

    #[error("relator `{0}` is not homogeneous")]
    Inhomogeneous(String),

    #[error("relator `{relator}` has degree {degree}; relators must have degree >= 2")]
    DegreeTooLow { relator: String, degree: u32 },

    #[error("relator `{0}` has a linear term; the kernel must lie in the square of the maximal ideal")]
    LinearTerm(String),

    #[error("relator `{0}` is zero over the coefficient field")]
    ZeroRelator(String),

    #[error("base_relators must be a prefix of relators")]
    BaseNotPrefix,

    #[error("presentation layers do not form a tower: {0}")]
    NotATower(String),

    #[error("requested {what} = {value} exceeds the bound {bound}")]
    BoundExceeded { what: &'static str, value: u32, bound: u32 },

    #[error("element refers to variable #{0}, which is not part of this tower")]
    MixedTowers(usize),

    #[error("malformed extension variable: {0}")]
    BadDifferential(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    InsufficientCertification(String),

    #[error("rank of D_{n} is outside the window where it is determined by deviations in characteristic {characteristic}")]
    OutsideWindow { n: u32, characteristic: u64 },

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}
