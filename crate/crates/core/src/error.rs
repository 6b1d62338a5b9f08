use thiserror::Error;

/// Errors raised anywhere in the singularity-location pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series has a zero constant term and is not invertible")]
    NotInvertible,
    #[error("evaluation hit a negative power of a zero coordinate")]
    EvaluationSingular,
    #[error("exponent matrix is singular")]
    SingularExponentMatrix,
    #[error("integer overflow risk in exact arithmetic")]
    OverflowRisk,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("singular Jacobian at t = {t}")]
    SingularJacobian { t: String },
    #[error("Newton did not converge in {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("step size underflow at t = {t} (step {step:e})")]
    StepUnderflow { t: f64, step: f64 },
    #[error("samples jumped branch: wrap-around mismatch {mismatch:e}")]
    BranchJump { mismatch: f64 },
    #[error("radar inconclusive: no ratio estimate converged")]
    InconclusiveRadar,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
