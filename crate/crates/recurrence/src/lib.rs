//! Exact and floating-point evaluation of number sequences defined by
//! the recursion a_n = a_{n−1} + a_{n−N}.
//!
//! The crate offers several independent backends for the same values:
//!
//! - [`ring`]: exact quotient-ring exponentiation extracting the
//!   auxiliary sequence κ in O(log n) ring products.
//! - [`sequence`]: terms of arbitrary additive specs as κ-window
//!   combinations, plus the multiplicative variant kept in factored
//!   form.
//! - [`series`]: ground-truth backends — direct iteration and exact
//!   power-series coefficients of the generating function.
//! - [`roots`] / [`closed`]: floating-point closed forms built on the
//!   zeros of x^N + x − 1 at configurable precision, including the
//!   N = 3 Chebyshev and floor-function formulas and Binet's formula
//!   for N = 2.
//!
//! Backends cross-validate each other; the `recur` command line tool
//! exposes them and a `verify` mode that runs them side by side.

pub mod closed;
pub mod error;
pub mod fixed;
pub mod ring;
pub mod roots;
pub mod sequence;
pub mod series;

pub use error::{Error, Result};
pub use fixed::{Cx, Fixed};
pub use ring::RingElement;
pub use roots::{FloatConfig, RootSet};
pub use sequence::{FactoredInteger, MultiplicativeSpec, RecurrenceSpec};
pub use series::{GeneralRecurrenceSpec, RationalSeries};
