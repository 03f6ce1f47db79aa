use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Payloads are stored as `f64` regardless of the scalar type the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input record violates one of its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// A quadrature did not reach its tolerance within the subdivision budget.
    #[error("accuracy error: {what} (estimated error {estimate:e}, requested {requested:e})")]
    Accuracy {
        what: String,
        estimate: f64,
        requested: f64,
    },

    /// Root finding or eigenvalue bisection failed.
    #[error("solver error: {what} (last bracket [{lo}, {hi}])")]
    Solver { what: String, lo: f64, hi: f64 },
}

impl Error {
    /// True for input-side failures (domain or validation), false for numerical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Validation(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
