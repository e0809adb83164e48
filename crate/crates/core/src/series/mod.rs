//! Exact rational coefficients and truncated power-series rings.
//!
//! Everything downstream computes in one of three coefficient domains:
//!
//! - [`Rational`]: arbitrary-precision fractions, always in lowest terms with
//!   a positive denominator.
//! - [`Polynomial`]: exact (untruncated) polynomials over [`Rational`].
//! - [`QSeries`]: power series in `q` truncated at a fixed order `N`, i.e.
//!   computed modulo `q^(N+1)`. Binary operations require equal orders and
//!   fail loudly otherwise; precision is never mixed silently.
//!
//! [`BiSeries`] layers a second truncated variable `z` on top of [`QSeries`]
//! and is used for moment/cumulant generating functions.

mod biseries;
mod polynomial;
mod qseries;
mod rational;
mod ring;

pub use biseries::BiSeries;
pub(crate) use biseries::zseries_log;
pub use polynomial::Polynomial;
pub use qseries::{pochhammer_finite, pochhammer_tail, QSeries};
pub use rational::{format_rational, parse_rational, rat, ratio, Rational};
pub use ring::CoefficientRing;

use thiserror::Error;

/// Errors raised by series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// A coefficient list longer than `order + 1` was supplied.
    #[error("coefficient list has {given} entries but order {order} admits at most {max}", max = order + 1)]
    TooManyCoefficients { given: usize, order: usize },
    /// Binary operation between series of different truncation orders.
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    /// Inversion of a series whose constant coefficient is zero.
    #[error("constant coefficient is zero; series is not invertible")]
    NotInvertible,
    /// A precondition on the operand's shape was violated.
    #[error("{0}")]
    Domain(&'static str),
}
