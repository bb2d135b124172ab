//! Exact dense linear algebra over the scalar domains the rest of the crate
//! needs: arbitrary-precision rationals, prime fields `F_p`, and the
//! cyclotomic field `Q(zeta_p)` in the power basis.
//!
//! Everything here is elimination-based and exact; there are no floating
//! point numbers anywhere in the crate.  Matrices are small (at most a few
//! hundred rows), so plain rational pivoting is used throughout.

mod matrix;
mod scalar;

pub use matrix::{random_invertible, ExactMatrix};
pub use scalar::{Scalar, ScalarDomain};

use alloc::string::String;
use core::fmt;

/// Errors from matrix construction and elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    /// Two operands live in different scalar domains.
    DomainMismatch { left: ScalarDomain, right: ScalarDomain },
    /// The operation needs a field but the domain is a ring (cyclotomic
    /// entries with denominators are fine; the check is structural, see
    /// [`ScalarDomain::is_field`]).
    NotAField { domain: ScalarDomain },
    /// Incompatible shapes for a product or power.
    DimensionMismatch { detail: String },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DomainMismatch { left, right } => {
                write!(f, "scalar domain mismatch: {left} vs {right}")
            }
            LinalgError::NotAField { domain } => {
                write!(f, "domain {domain} is not a supported field for elimination")
            }
            LinalgError::DimensionMismatch { detail } => {
                write!(f, "dimension mismatch: {detail}")
            }
        }
    }
}
