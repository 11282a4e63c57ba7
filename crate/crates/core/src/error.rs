use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus at level {0} is reducible over the level below")]
    ModulusReducible(usize),
    #[error("modulus at level {0} is not monic")]
    ModulusNotMonic(usize),
    #[error("modulus at level {0} has degree < 2")]
    ModulusDegree(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("level mismatch: expected level {expected}, found {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("iterate degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: u128, cap: u128 },
    #[error("degree {0} is outside the supported range")]
    DegreeUnsupported(usize),
    #[error("field size exceeds the configured cap ({0})")]
    SizeCapExceeded(String),
    #[error("no root of f - alpha in any extension of degree dividing {0}")]
    NoRootInRequiredExtension(usize),
    #[error("chain has no entry at depth {0}")]
    ChainTooShort(usize),
    #[error("depth budget exceeded: {0}")]
    DepthBudgetExceeded(String),
    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("wrong residue class: {0}")]
    WrongResidueClass(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("chain construction failed at depth {depth}: {reason}")]
    ChainConstructionFailed { depth: usize, reason: String },
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
