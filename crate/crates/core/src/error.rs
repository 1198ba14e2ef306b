use num_bigint::BigInt;
use thiserror::Error;

/// Errors reported by the library.
///
/// `Syntax` is the only variant produced while reading textual input; every
/// other variant is a domain-level precondition failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("generator index {gen} out of range 1..={rank}")]
    GeneratorIndex { gen: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("nilpotency level mismatch: {left} vs {right}")]
    LevelMismatch { left: usize, right: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("endomorphism is not 2-connected: abelianization determinant {det}")]
    NotTwoConnected { det: BigInt },

    #[error("word is not in the lower central series term {required}: its degree is {actual}")]
    NotInGamma { required: usize, actual: String },

    #[error("filtration level too low: operation needs level >= {required}, endomorphism has level {actual}")]
    FiltrationTooLow { required: usize, actual: usize },

    #[error("boundary certificate fails for the stored lift at level {k}")]
    CertificateFailed { k: usize },

    #[error("rank {rank} is not of the form 2g")]
    RankNotEven { rank: usize },

    #[error("iteration did not stabilize after {iterations} rounds (class {class})")]
    NotStabilized { iterations: usize, class: usize },

    #[error("equation {index} is not acyclic: variable x{variable} has net exponent {exponent}")]
    NotAcyclic {
        index: usize,
        variable: usize,
        exponent: i64,
    },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors produced while parsing textual input, as opposed to
    /// domain-level precondition failures.
    pub fn is_syntax(&self) -> bool {
        matches!(self, Error::Syntax { .. })
    }
}
