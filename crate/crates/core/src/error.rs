use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Z/{0}Z has 1 = 0; the modulus must be at least 2")]
    TrivialRing(usize),

    #[error("ring of {size} elements exceeds the size guard of {limit}")]
    SizeGuard { size: u128, limit: usize },

    #[error("ideal lattice exceeds the guard of {limit} ideals")]
    LatticeGuard { limit: usize },

    #[error("brute-force budget of {budget} tuple visits exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("axiom violated: {0}")]
    Axiom(String),

    #[error("a product needs at least one factor")]
    EmptyProduct,

    #[error("the ideal is the whole ring; a proper ideal is required")]
    ImproperIdeal,

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("the module is defined over a different ring")]
    ModuleMismatch,

    #[error("ring is not a trivial extension")]
    NotTrivialExtension,

    #[error("unknown basis name `{0}`")]
    UnknownName(String),

    #[error("coefficient {value} out of range for modulus {modulus}")]
    CoefficientOutOfRange { value: i64, modulus: usize },

    #[error("malformed element expression `{expr}`: {reason}")]
    Expression { expr: String, reason: String },

    #[error("spec error at line {line}, column {column}: {message}")]
    Spec {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn expr(expr: &str, reason: impl Into<String>) -> Self {
        Error::Expression {
            expr: expr.to_string(),
            reason: reason.into(),
        }
    }
}
