//! Exact-arithmetic kernels for divisor generating functions.
//!
//! The crate is organized around four layers:
//!
//! - [`series`]: arbitrary-precision rationals, exact polynomials, and the
//!   truncated power-series rings in `q` and in `(z, q)` that every other
//!   layer computes in. All arithmetic is exact; nothing is ever rounded.
//! - [`combinatorics`]: divisor sums, binomials, Bernoulli numbers, Eulerian
//!   polynomials, complete Bell polynomials, and power-sum machinery.
//! - [`identities`]: builders for the q-series under study (divisor series,
//!   weighted q-Pochhammer sums, Ramanujan-type alternating sums, nested
//!   Lambert sums) and a verification suite that compares them
//!   coefficientwise to a requested truncation order.
//! - [`dag`]: the exact distribution of the reachable-set size of vertex 1 in
//!   a random acyclic digraph, its moments and cumulants as polynomials in
//!   `q = 1 - p`, the stabilized cumulant limits, and a seeded Monte Carlo
//!   simulator that cross-checks the exact results.

pub mod combinatorics;
pub mod dag;
pub mod identities;
pub mod series;

pub use series::{BiSeries, Polynomial, QSeries, Rational, SeriesError};
