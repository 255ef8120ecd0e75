use crate::exactalg::Rational;
use crate::groups::Factor;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },
    #[error("coordinate {index} = {value} is not integral on factor {factor}")]
    NonIntegralCoordinate { index: usize, value: Rational, factor: String },
    #[error("factor R is solver-internal and cannot appear in a circuit group")]
    RealFactorInCircuit,
    #[error("invalid factor Z_{0}: modulus must be at least 1")]
    BadModulus(u64),
    #[error("non-integer row {row}: entry {value} at column {col} maps into {factor}")]
    NonIntegerRow { row: usize, col: usize, value: Rational, factor: Factor },
    #[error("consistency violation at ({row}, {col}): {side} condition fails for entry {value}")]
    ConsistencyViolation { row: usize, col: usize, side: Side, value: Rational },
    #[error("forbidden block at ({row}, {col}): no nonzero continuous homomorphism {domain} -> {codomain}, entry {value}")]
    ForbiddenBlock { row: usize, col: usize, domain: Factor, codomain: Factor, value: Rational },
    #[error("matrix is not symmetric{modz} at ({row}, {col})", modz = if *.mod_z { " modulo Z" } else { "" })]
    NotSymmetric { row: usize, col: usize, mod_z: bool },
    #[error("automorphism is not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid quadratic function: {0}")]
    InvalidQuadratic(String),
    #[error("register index {index} out of range for {m} registers")]
    RegisterOutOfRange { index: usize, m: usize },
    #[error("epsilon {0} outside (0, 1/2]")]
    EpsilonOutOfRange(Rational),
    #[error("{what} has {count} points, cap is {cap}")]
    CapExceeded { what: String, count: String, cap: u64 },
    #[error("dense oracle needs finite factors, factor {index} is {factor}")]
    InfiniteFactor { index: usize, factor: Factor },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code: 1 parse, 2 validation, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io { .. } => 1,
            Error::Internal(_) | Error::Contract(_) => 3,
            _ => 2,
        }
    }
}
