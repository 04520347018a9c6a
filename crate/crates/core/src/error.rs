use thiserror::Error;

use crate::operator::OperatorError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("curvature inversion failed at r={r}: {reason}")]
    NonMonotoneInversion { r: f64, reason: String },
    #[error("profile overflow at r={r}")]
    Overflow { r: f64 },
    #[error("bisection bracket [{lo}, {hi}] does not straddle the exponent ({detail})")]
    BracketFailure { lo: f64, hi: f64, detail: String },
    #[error("policy iteration did not stabilize after {sweeps} sweeps")]
    PolicyCycle { sweeps: usize },
    #[error("tridiagonal system is singular at row {row}")]
    SingularSystem { row: usize },
    #[error("no convergence after {iterations} iterations: bracket [{lo}, {hi}], defect {defect:e}")]
    NoConvergence { iterations: usize, lo: f64, hi: f64, defect: f64 },
    #[error("time step {dt:e} exceeds the stability bound {bound:e}")]
    CflViolation { dt: f64, bound: f64 },
    #[error("config parse error at line {line}, column {column}: {message}")]
    ConfigParse { line: usize, column: usize, message: String },
    #[error("config validation: {0}")]
    ConfigValidation(String),
    #[error("malformed profile data: {0}")]
    ProfileFormat(String),
    #[error("{failed} verification check(s) failed")]
    ChecksFailed { failed: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Operator(_) => "operator",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NonMonotoneInversion { .. } => "non_monotone_inversion",
            Error::Overflow { .. } => "overflow",
            Error::BracketFailure { .. } => "bracket_failure",
            Error::PolicyCycle { .. } => "policy_cycle",
            Error::SingularSystem { .. } => "singular_system",
            Error::NoConvergence { .. } => "no_convergence",
            Error::CflViolation { .. } => "cfl_violation",
            Error::ConfigParse { .. } => "parse_error",
            Error::ConfigValidation(_) => "validation_error",
            Error::ProfileFormat(_) => "profile_format",
            Error::ChecksFailed { .. } => "checks_failed",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
