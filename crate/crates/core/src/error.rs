use thiserror::Error;

/// Failure modes shared by every pricer and special function.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A gamma argument sits within the pole guard of a non-positive integer.
    #[error("PoleProximity: argument {0} is within the pole guard of a non-positive integer")]
    PoleProximity(f64),
    #[error("DomainError: {0}")]
    DomainError(String),
    #[error("ConvergenceFailure: {0}")]
    ConvergenceFailure(String),
    /// The asset has no finite first exponential moment (λ₊ ≤ 1).
    #[error("MartingaleViolation: {0}")]
    MartingaleViolation(String),
    #[error("AtmUnsupported: |k| = {0:e} is below the at-the-money cutoff")]
    AtmUnsupported(f64),
    /// Characteristic function did not decay below threshold before the cutoff cap.
    #[error("SlowDecay: |integrand| still above threshold at u = {0:e}")]
    SlowDecay(f64),
    #[error("MomentViolation: {0}")]
    MomentViolation(String),
}

impl Error {
    /// Bare variant name, used as a status tag in CSV output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PoleProximity(_) => "PoleProximity",
            Error::DomainError(_) => "DomainError",
            Error::ConvergenceFailure(_) => "ConvergenceFailure",
            Error::MartingaleViolation(_) => "MartingaleViolation",
            Error::AtmUnsupported(_) => "AtmUnsupported",
            Error::SlowDecay(_) => "SlowDecay",
            Error::MomentViolation(_) => "MomentViolation",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainError(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
