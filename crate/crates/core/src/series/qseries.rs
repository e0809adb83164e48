//! Truncated formal power series in `q` over exact rationals.
//!
//! A [`QSeries`] of order `N` is a polynomial representative of a series
//! modulo `q^(N+1)`: exactly `N + 1` coefficients, all exact rationals.
//!
//! Invariants:
//! - `coeffs.len() == order + 1`, always.
//! - Binary operations require equal orders and return
//!   [`SeriesError::OrderMismatch`] otherwise. Nothing re-truncates silently.
//! - Every operation is pure; values are immutable once built.
//!
//! The operator impls (`+`, `-`, `*`) are thin wrappers over the fallible
//! `try_*` methods that panic on order mismatch; builders that construct
//! both operands at the same order use them freely.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::{format_rational, parse_rational, rat, Rational};
use super::SeriesError;

/// Power series in `q` truncated at a fixed order (computed mod `q^(N+1)`).
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// The zero series at the given truncation order.
    pub fn zero(order: usize) -> Self {
        QSeries {
            order,
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// The constant series 1 at the given truncation order.
    pub fn one(order: usize) -> Self {
        QSeries::monomial(rat(1), 0, order)
    }

    /// `c * q^k`, truncated (the zero series if `k > order`).
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series with the given low-order coefficients, zero-padded to `order`.
    ///
    /// Fails if more than `order + 1` values are supplied.
    pub fn from_coeffs(values: Vec<Rational>, order: usize) -> Result<Self, SeriesError> {
        if values.len() > order + 1 {
            return Err(SeriesError::TooManyCoefficients {
                given: values.len(),
                order,
            });
        }
        let mut coeffs = values;
        coeffs.resize(order + 1, Rational::zero());
        Ok(QSeries { order, coeffs })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(values: &[i64], order: usize) -> Result<Self, SeriesError> {
        QSeries::from_coeffs(values.iter().map(|&v| rat(v)).collect(), order)
    }

    /// The polynomial `p` read as a series truncated at `order`.
    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        for (i, c) in p.coeffs().iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `q^m`; zero for `m > order` (those terms are unknown,
    /// but every caller in this crate treats the series as its polynomial
    /// representative, so out-of-range reads never occur in practice).
    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Drops coefficients above `new_order`. Fails if `new_order > order`
    /// (precision can only shrink).
    pub fn truncated(&self, new_order: usize) -> Result<Self, SeriesError> {
        if new_order > self.order {
            return Err(SeriesError::Domain(
                "cannot extend a series beyond its truncation order",
            ));
        }
        Ok(QSeries {
            order: new_order,
            coeffs: self.coeffs[..=new_order].to_vec(),
        })
    }

    fn check_orders(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn negated(&self) -> Self {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Coefficientwise scaling by an exact rational.
    pub fn scale(&self, c: &Rational) -> Self {
        QSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order. O(N^2) schoolbook
    /// convolution; exact rational FFT is not meaningful at these sizes.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_orders(other)?;
        let mut coeffs = vec![Rational::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(self.order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Multiplicative inverse: solves the triangular system
    /// `b_0 = 1/a_0`, `b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}`.
    ///
    /// Fails with [`SeriesError::NotInvertible`] when `a_0 = 0`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let inv_a0 = Rational::one() / &self.coeffs[0];
        let mut coeffs = vec![Rational::zero(); self.order + 1];
        coeffs[0] = inv_a0.clone();
        for n in 1..=self.order {
            let mut sum = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !coeffs[n - k].is_zero() {
                    sum += &self.coeffs[k] * &coeffs[n - k];
                }
            }
            if !sum.is_zero() {
                coeffs[n] = -(&inv_a0 * sum);
            }
        }
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Truncated exponential. Requires a zero constant coefficient.
    ///
    /// Uses `b' = a' b`, i.e. `b_n = (1/n) sum_{k=1..n} k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::Domain(
                "exp requires a zero constant coefficient",
            ));
        }
        let mut coeffs = vec![Rational::zero(); self.order + 1];
        coeffs[0] = Rational::one();
        for n in 1..=self.order {
            let mut sum = Rational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !coeffs[n - k].is_zero() {
                    sum += &self.coeffs[k] * &coeffs[n - k] * rat(k as i64);
                }
            }
            if !sum.is_zero() {
                coeffs[n] = sum / rat(n as i64);
            }
        }
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Truncated logarithm. Requires a unit constant coefficient.
    ///
    /// Integrates `a'/a`: `log(a)_n = (a' * a^{-1})_{n-1} / n`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::Domain(
                "log requires constant coefficient exactly 1",
            ));
        }
        let derivative = QSeries {
            order: self.order,
            coeffs: (0..=self.order)
                .map(|m| self.coeff(m + 1) * rat(m as i64 + 1))
                .collect(),
        };
        let quotient = derivative.try_mul(&self.inverse()?)?;
        let mut coeffs = vec![Rational::zero(); self.order + 1];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = quotient.coeff(n - 1) / rat(n as i64);
        }
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    /// Multiplication by `q^k`: coefficient of `q^m` becomes the input's
    /// coefficient of `q^(m-k)`; everything shifted past the order is lost.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); self.order + 1];
        if k <= self.order {
            coeffs[k..].clone_from_slice(&self.coeffs[..=self.order - k]);
        }
        QSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Substitution `q -> q^m`, truncated at the original order.
    /// Fails for `m = 0` (not a series substitution).
    pub fn substitute_power(&self, m: usize) -> Result<Self, SeriesError> {
        if m == 0 {
            return Err(SeriesError::Domain("substitution power must be positive"));
        }
        let mut coeffs = vec![Rational::zero(); self.order + 1];
        for i in 0..=(self.order / m) {
            coeffs[i * m] = self.coeffs[i].clone();
        }
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    /// In-place multiplication by `(1 - q^k)`, the workhorse of every
    /// q-Pochhammer product. For `k > order` the factor is 1 mod `q^(N+1)`.
    pub fn mul_one_minus_qpow(&mut self, k: usize) {
        if k == 0 {
            for c in &mut self.coeffs {
                *c = Rational::zero();
            }
            return;
        }
        for m in (k..=self.order).rev() {
            let delta = self.coeffs[m - k].clone();
            if !delta.is_zero() {
                self.coeffs[m] -= delta;
            }
        }
    }

    /// Evaluates the truncated series at a floating point, by Horner.
    pub fn eval_f64(&self, q: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q + super::rational::rational_to_f64(c);
        }
        acc
    }

    /// Exponent and both coefficients of the first position where two
    /// equal-order series disagree.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<(usize, Rational, Rational)>, SeriesError> {
        self.check_orders(other)?;
        for m in 0..=self.order {
            if self.coeffs[m] != other.coeffs[m] {
                return Ok(Some((m, self.coeffs[m].clone(), other.coeffs[m].clone())));
            }
        }
        Ok(None)
    }
}

/// Finite q-Pochhammer product `(q; q)_n = prod_{j=1..n} (1 - q^j)`,
/// truncated at `order`. The empty product (`n = 0`) is 1.
pub fn pochhammer_finite(n: usize, order: usize) -> QSeries {
    let mut acc = QSeries::one(order);
    for j in 1..=n.min(order) {
        acc.mul_one_minus_qpow(j);
    }
    acc
}

/// Tail product `prod_{j >= start} (1 - q^j)` truncated at `order`; factors
/// with `j > order` are 1 mod `q^(order+1)` and are skipped, so the product
/// is finite. `start = 1` gives the Euler function `(q)_inf`.
pub fn pochhammer_tail(start: usize, order: usize) -> Result<QSeries, SeriesError> {
    if start == 0 {
        return Err(SeriesError::Domain(
            "tail product must start at a positive power",
        ));
    }
    let mut acc = QSeries::one(order);
    for j in start..=order {
        acc.mul_one_minus_qpow(j);
    }
    Ok(acc)
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.try_add(rhs).expect("series addition: order mismatch")
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.try_sub(rhs).expect("series subtraction: order mismatch")
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.try_mul(rhs).expect("series product: order mismatch")
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.negated()
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[{}]", self)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = super::polynomial::render_terms("q", self.coeffs.iter().enumerate());
        write!(f, "{terms} + O(q^{})", self.order + 1)
    }
}

// Interchange format: {"order": N, "coeffs": ["p/q", ...]} with exactly
// N + 1 lowest-terms coefficient strings.

#[derive(Serialize, Deserialize)]
struct QSeriesWire {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QSeriesWire {
            order: self.order,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = QSeriesWire::deserialize(deserializer)?;
        if wire.coeffs.len() != wire.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} requires exactly {} coefficients, got {}",
                wire.order,
                wire.order + 1,
                wire.coeffs.len()
            )));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries {
            order: wire.order,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::ratio;

    #[test]
    fn construction_pads_and_checks_length() {
        let s = QSeries::from_i64(&[0, 1, 2], 4).unwrap();
        assert_eq!(s.coeffs().len(), 5);
        assert_eq!(s.coeff(1), rat(1));
        assert_eq!(s.coeff(2), rat(2));
        assert_eq!(s.coeff(4), rat(0));

        assert!(QSeries::from_i64(&[], 3).unwrap().is_zero());
        assert!(QSeries::from_i64(&[1], 2).unwrap().is_one());
        assert_eq!(
            QSeries::from_i64(&[1, 2, 3], 1),
            Err(SeriesError::TooManyCoefficients { given: 3, order: 1 })
        );
    }

    #[test]
    fn add_neg_scale() {
        let q1 = QSeries::monomial(rat(1), 1, 3);
        let q2 = QSeries::monomial(rat(1), 2, 3);
        assert_eq!(&q1 + &q2, QSeries::from_i64(&[0, 1, 1], 3).unwrap());
        assert_eq!(-&q1, QSeries::from_i64(&[0, -1], 3).unwrap());
        let doubled = QSeries::monomial(rat(2), 1, 3);
        assert_eq!(doubled.scale(&ratio(1, 2)), q1);
    }

    #[test]
    fn order_mismatch_is_loud() {
        let a = QSeries::one(3);
        let b = QSeries::one(4);
        assert_eq!(
            a.try_add(&b),
            Err(SeriesError::OrderMismatch { left: 3, right: 4 })
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn multiplication_truncates() {
        let one_plus_q = QSeries::from_i64(&[1, 1], 3).unwrap();
        let one_minus_q = QSeries::from_i64(&[1, -1], 3).unwrap();
        assert_eq!(
            &one_plus_q * &one_minus_q,
            QSeries::from_i64(&[1, 0, -1], 3).unwrap()
        );

        let q = QSeries::monomial(rat(1), 1, 1);
        assert!((&q * &q).is_zero());

        // (1 + q + q^2)^2 at N = 2: direct convolution gives 1 + 2q + 3q^2.
        let s = QSeries::from_i64(&[1, 1, 1], 2).unwrap();
        assert_eq!(&s * &s, QSeries::from_i64(&[1, 2, 3], 2).unwrap());
    }

    #[test]
    fn inversion() {
        let geometric = QSeries::from_i64(&[1, -1], 4).unwrap().inverse().unwrap();
        assert_eq!(geometric, QSeries::from_i64(&[1, 1, 1, 1, 1], 4).unwrap());

        assert!(QSeries::one(3).inverse().unwrap().is_one());

        // inv(2 + q) at N = 2: solving the triangular system by hand gives
        // 1/2 - q/4 + q^2/8.
        let inv = QSeries::from_i64(&[2, 1], 2).unwrap().inverse().unwrap();
        let expected =
            QSeries::from_coeffs(vec![ratio(1, 2), ratio(-1, 4), ratio(1, 8)], 2).unwrap();
        assert_eq!(inv, expected);

        assert_eq!(
            QSeries::monomial(rat(1), 1, 3).inverse(),
            Err(SeriesError::NotInvertible)
        );
    }

    #[test]
    fn exp_and_log() {
        assert!(QSeries::zero(4).exp().unwrap().is_one());

        let q = QSeries::monomial(rat(1), 1, 3);
        let expected =
            QSeries::from_coeffs(vec![rat(1), rat(1), ratio(1, 2), ratio(1, 6)], 3).unwrap();
        assert_eq!(q.exp().unwrap(), expected);

        // log(1/(1-q)) = q + q^2/2 + q^3/3 + q^4/4 (the -log(1-q) expansion).
        let geo = QSeries::from_i64(&[1, -1], 4).unwrap().inverse().unwrap();
        let expected = QSeries::from_coeffs(
            vec![rat(0), rat(1), ratio(1, 2), ratio(1, 3), ratio(1, 4)],
            4,
        )
        .unwrap();
        assert_eq!(geo.log().unwrap(), expected);

        assert!(QSeries::one(3).exp().is_err());
        assert!(QSeries::zero(3).log().is_err());
    }

    #[test]
    fn shift_semantics() {
        assert_eq!(
            QSeries::one(3).shift(2),
            QSeries::from_i64(&[0, 0, 1], 3).unwrap()
        );
        let q = QSeries::monomial(rat(1), 1, 3);
        assert_eq!(q.shift(0), q);
        let s = QSeries::from_i64(&[1, 1], 3).unwrap();
        assert_eq!(s.shift(3), QSeries::from_i64(&[0, 0, 0, 1], 3).unwrap());
    }

    #[test]
    fn power_substitution() {
        let s = QSeries::from_i64(&[1, 1], 5).unwrap();
        assert_eq!(
            s.substitute_power(3).unwrap(),
            QSeries::from_i64(&[1, 0, 0, 1], 5).unwrap()
        );
        let t = QSeries::from_i64(&[0, 1, 1], 3).unwrap();
        assert_eq!(
            t.substitute_power(2).unwrap(),
            QSeries::from_i64(&[0, 0, 1], 3).unwrap()
        );
        // Geometric series with q -> q^2: substitute, then truncate.
        let geo = QSeries::from_i64(&[1, -1], 4).unwrap().inverse().unwrap();
        assert_eq!(
            geo.substitute_power(2).unwrap(),
            QSeries::from_i64(&[1, 0, 1, 0, 1], 4).unwrap()
        );
        assert!(s.substitute_power(0).is_err());
    }

    #[test]
    fn pochhammer_products() {
        assert!(pochhammer_finite(0, 5).is_one());
        assert_eq!(
            pochhammer_finite(2, 3),
            QSeries::from_i64(&[1, -1, -1, 1], 3).unwrap()
        );
        assert_eq!(
            pochhammer_finite(1, 1),
            QSeries::from_i64(&[1, -1], 1).unwrap()
        );

        // Euler function prefix: (q)_inf = 1 - q - q^2 + 0 q^3 + 0 q^4 + ...
        assert_eq!(
            pochhammer_tail(1, 4).unwrap(),
            QSeries::from_i64(&[1, -1, -1, 0, 0], 4).unwrap()
        );
        assert!(pochhammer_tail(5, 4).unwrap().is_one());
        assert_eq!(
            pochhammer_tail(3, 3).unwrap(),
            QSeries::from_i64(&[1, 0, 0, -1], 3).unwrap()
        );
        assert!(pochhammer_tail(0, 3).is_err());
    }

    #[test]
    fn json_interchange() {
        let s = QSeries::from_coeffs(vec![rat(1), ratio(-1, 2)], 2).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"order":2,"coeffs":["1","-1/2","0"]}"#);
        let back: QSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);

        let bad: Result<QSeries, _> = serde_json::from_str(r#"{"order":2,"coeffs":["1"]}"#);
        assert!(bad.is_err());
    }
}
