use thiserror::Error;

/// Errors raised by ring arithmetic, formula handling, constructions and the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring spec `{0}`")]
    InvalidRingSpec(String),
    #[error("encoding mismatch: `{encoding}` is not a valid element of {ring}")]
    EncodingMismatch { ring: String, encoding: String },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unsupported membership strategy for ideal in {0}")]
    UnsupportedStrategy(String),
    #[error("unsupported quotient: {0}")]
    UnsupportedQuotient(String),
    #[error("empty coefficient list for monic extension")]
    EmptyCoefficients,
    #[error("not a simple root: {0}")]
    NotASimpleRoot(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} is not a field")]
    NotAField(String),
    #[error("ideal {0} is not prime")]
    NotPrime(String),
    #[error("formula is not positive-existential")]
    NotPositiveExistential,
    #[error("{0} is not finite")]
    NotFinite(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("recursion depth {0} is not supported")]
    UnsupportedDepth(usize),
    #[error("certificates do not match: {0}")]
    MismatchedCertificates(String),
    #[error("infeasible scan: {0}")]
    InfeasibleScan(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("witness failed re-check: {0}")]
    WitnessRecheck(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
