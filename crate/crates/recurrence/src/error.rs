//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the evaluation backends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two ring elements with different orders were combined.
    #[error("ring order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    /// The order gap N must be at least 2.
    #[error("invalid order {order}: the order gap must be at least 2")]
    InvalidOrder { order: usize },

    /// A spec failed validation (wrong number of initial values, zero
    /// leading weight, non-positive multiplicative initials, ...).
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// An index was outside the operation's admissible range.
    #[error("index out of range: {0}")]
    Range(String),

    /// The requested value is outside the formula's domain of validity.
    #[error("domain error: {0}")]
    Domain(String),

    /// A floating-point result could not be certified at the working
    /// precision (imaginary residue too large, inexact division in a
    /// floor formula, ...).
    #[error("precision error: {0}")]
    Precision(String),

    /// The root finder did not converge within its iteration budget.
    /// Carries one residual magnitude per tentative root.
    #[error("root finding failed to converge; residuals: {residuals:?}")]
    Convergence { residuals: Vec<String> },

    /// Expanding a factored integer would exceed the digit bound.
    #[error("too large to expand: ~{estimated_digits} digits exceeds bound {bound}")]
    ExpansionTooLarge { estimated_digits: u64, bound: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
