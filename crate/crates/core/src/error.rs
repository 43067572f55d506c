//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation at (or numerically at) a pole.
    #[error("pole: {0}")]
    Pole(String),

    /// The value is too close to zero to divide by or take a log of.
    #[error("near-zero value: {0}")]
    NearZero(String),

    /// The eta-series prefactor 1 - 2^(1-s) vanishes numerically.
    #[error("near-singular eta prefactor at s = {re}{im:+}i (|1 - 2^(1-s)| = {magnitude:e})")]
    NearSingular { re: f64, im: f64, magnitude: f64 },

    /// Adaptive quadrature ran out of subdivisions.
    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {error_estimate:e})")]
    Quadrature { subdivisions: usize, error_estimate: f64 },

    /// An iterative method hit its iteration cap.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("capacity exceeded: requested {requested}, maximum {maximum}")]
    Capacity { requested: u64, maximum: u64 },

    #[error("argument {value} outside table range [0, {limit}]")]
    OutOfRange { value: f64, limit: u64 },

    #[error("table too small: need the {needed}-th prime but the table holds {available} primes (limit {limit})")]
    InsufficientTable { needed: u64, available: u64, limit: u64 },

    #[error("Taylor step {step} too large at anchor x0 = {x0} (last-term ratio {ratio:e})")]
    StepTooLarge { step: f64, x0: f64, ratio: f64 },

    #[error("series tail too large: {0}")]
    TailTooLarge(String),

    #[error("float overflow: {0}")]
    Overflow(String),

    #[error("branch risk: {0}")]
    BranchRisk(String),

    #[error("degenerate fit: {usable} usable rows, at least {required} required")]
    DegenerateFit { usable: usize, required: usize },

    #[error("invalid cache file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by a bad argument rather than a numerical failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Pole(_)
                | Error::OutOfRange { .. }
                | Error::Capacity { .. }
                | Error::InsufficientTable { .. }
                | Error::BranchRisk(_)
                | Error::NearSingular { .. }
                | Error::NearZero(_)
        )
    }
}
