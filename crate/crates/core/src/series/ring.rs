//! A minimal commutative-ring interface with rational scalars.
//!
//! The complete Bell polynomial and the truncated exp/log kernels are the
//! same computation whether the coefficients are rationals, exact
//! polynomials, or truncated q-series. This trait is what lets one
//! implementation serve all three. `zero_like`/`one_like` take a model value
//! because some rings carry shape (a [`QSeries`] knows its truncation order).

use super::polynomial::Polynomial;
use super::qseries::QSeries;
use super::rational::Rational;
use num_traits::{One, Zero};

pub trait CoefficientRing: Clone {
    /// Additive identity with the same shape as `model`.
    fn zero_like(model: &Self) -> Self;
    /// Multiplicative identity with the same shape as `model`.
    fn one_like(model: &Self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_sub(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_scale(&self, c: &Rational) -> Self;
    fn ring_is_zero(&self) -> bool;
}

impl CoefficientRing for Rational {
    fn zero_like(_: &Self) -> Self {
        Rational::zero()
    }
    fn one_like(_: &Self) -> Self {
        Rational::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl CoefficientRing for Polynomial {
    fn zero_like(_: &Self) -> Self {
        Polynomial::zero()
    }
    fn one_like(_: &Self) -> Self {
        Polynomial::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl CoefficientRing for QSeries {
    fn zero_like(model: &Self) -> Self {
        QSeries::zero(model.order())
    }
    fn one_like(model: &Self) -> Self {
        QSeries::one(model.order())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_sub(&self, other: &Self) -> Self {
        self - other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
}
