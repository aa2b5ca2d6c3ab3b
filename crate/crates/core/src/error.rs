use thiserror::Error;

/// Errors produced by the factorization engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: every cyclic factor needs order at least 2")]
    InvalidModulus(u64),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    #[error("class {0} carries no prime label, the sequence cannot be lifted")]
    Unliftable(String),

    #[error("element is not zero-sum (sum = {0})")]
    NotZeroSum(String),

    #[error("factorization is not a member of the fiber")]
    NotInFiber,

    #[error("elasticity of an empty length set is undefined")]
    EmptyLengthSet,

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("fiber enumeration stopped at cap {cap} before closing")]
    IncompleteFiber { cap: usize },

    #[error("relation lattice meets the positive orthant in {0:?}")]
    LatticeViolation(Vec<i64>),

    #[error("invalid spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded(_) | Error::IncompleteFiber { .. } => 3,
            _ => 2,
        }
    }
}
