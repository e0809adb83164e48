//! Truncated series in an auxiliary variable `z` whose coefficients live in
//! a coefficient ring — concretely [`QSeries`] for the bivariate ring used
//! by generating-function checks, and exact [`Polynomial`]s for finite-`n`
//! cumulants. The exp/log/mul kernels are generic over [`CoefficientRing`]
//! so both instantiations share one implementation.
//!
//! [`Polynomial`]: super::Polynomial

use super::qseries::QSeries;
use super::rational::{rat, Rational};
use super::ring::CoefficientRing;
use super::SeriesError;

/// Cauchy product of two z-truncated coefficient lists of equal length.
pub(crate) fn zseries_mul<T: CoefficientRing>(a: &[T], b: &[T]) -> Vec<T> {
    let len = a.len();
    let mut out: Vec<T> = (0..len).map(|_| T::zero_like(&a[0])).collect();
    for (i, ai) in a.iter().enumerate() {
        if ai.ring_is_zero() {
            continue;
        }
        for (j, bj) in b.iter().take(len - i).enumerate() {
            if !bj.ring_is_zero() {
                out[i + j] = out[i + j].ring_add(&ai.ring_mul(bj));
            }
        }
    }
    out
}

/// Truncated exponential of a z-series with zero constant term:
/// `exp(a) = sum_{j=0..T} a^j / j!` (the sum is exact because `a` has
/// z-valuation at least 1).
pub(crate) fn zseries_exp<T: CoefficientRing>(a: &[T]) -> Result<Vec<T>, SeriesError> {
    if !a[0].ring_is_zero() {
        return Err(SeriesError::Domain(
            "exp requires a zero constant coefficient",
        ));
    }
    let one = T::one_like(&a[0]);
    let mut out: Vec<T> = (0..a.len()).map(|_| T::zero_like(&a[0])).collect();
    out[0] = one.clone();
    let mut power: Vec<T> = out.clone(); // a^0
    let mut factorial = Rational::from_integer(1.into());
    for j in 1..a.len() {
        power = zseries_mul(&power, a);
        factorial *= rat(j as i64);
        let inv_fact = Rational::from_integer(1.into()) / &factorial;
        for (acc, p) in out.iter_mut().zip(&power) {
            if !p.ring_is_zero() {
                *acc = acc.ring_add(&p.ring_scale(&inv_fact));
            }
        }
    }
    Ok(out)
}

/// Truncated logarithm of a z-series with unit constant term:
/// `log(1 + w) = sum_{j=1..T} (-1)^(j-1) w^j / j`.
pub(crate) fn zseries_log<T: CoefficientRing>(a: &[T]) -> Result<Vec<T>, SeriesError> {
    let one = T::one_like(&a[0]);
    if !a[0].ring_sub(&one).ring_is_zero() {
        return Err(SeriesError::Domain(
            "log requires constant coefficient exactly 1",
        ));
    }
    let mut w: Vec<T> = a.to_vec();
    w[0] = T::zero_like(&a[0]);
    let mut out: Vec<T> = (0..a.len()).map(|_| T::zero_like(&a[0])).collect();
    let mut power = w.clone();
    for j in 1..a.len() {
        if j > 1 {
            power = zseries_mul(&power, &w);
        }
        let scalar = if j % 2 == 1 {
            Rational::new(1.into(), (j as i64).into())
        } else {
            Rational::new((-1).into(), (j as i64).into())
        };
        for (acc, p) in out.iter_mut().zip(&power) {
            if !p.ring_is_zero() {
                *acc = acc.ring_add(&p.ring_scale(&scalar));
            }
        }
    }
    Ok(out)
}

/// Bivariate truncated series: coefficient of `z^t` is a [`QSeries`], all
/// sharing one q-order. Computed mod `z^(T+1)` and mod `q^(N+1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    zorder: usize,
    qorder: usize,
    coeffs: Vec<QSeries>,
}

impl BiSeries {
    pub fn zero(zorder: usize, qorder: usize) -> Self {
        BiSeries {
            zorder,
            qorder,
            coeffs: vec![QSeries::zero(qorder); zorder + 1],
        }
    }

    pub fn one(zorder: usize, qorder: usize) -> Self {
        let mut s = BiSeries::zero(zorder, qorder);
        s.coeffs[0] = QSeries::one(qorder);
        s
    }

    /// Builds from explicit z-coefficients; all must share one q-order.
    pub fn from_zcoeffs(coeffs: Vec<QSeries>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Domain(
                "a bivariate series needs at least the z^0 coefficient",
            ));
        }
        let qorder = coeffs[0].order();
        for c in &coeffs {
            if c.order() != qorder {
                return Err(SeriesError::OrderMismatch {
                    left: qorder,
                    right: c.order(),
                });
            }
        }
        Ok(BiSeries {
            zorder: coeffs.len() - 1,
            qorder,
            coeffs,
        })
    }

    /// Embeds a q-series as a z-constant.
    pub fn from_qseries(qs: &QSeries, zorder: usize) -> Self {
        let mut s = BiSeries::zero(zorder, qs.order());
        s.coeffs[0] = qs.clone();
        s
    }

    pub fn zorder(&self) -> usize {
        self.zorder
    }

    pub fn qorder(&self) -> usize {
        self.qorder
    }

    /// Coefficient of `z^t`.
    pub fn zcoeff(&self, t: usize) -> &QSeries {
        &self.coeffs[t]
    }

    fn check_shape(&self, other: &Self) -> Result<(), SeriesError> {
        if self.zorder != other.zorder {
            return Err(SeriesError::OrderMismatch {
                left: self.zorder,
                right: other.zorder,
            });
        }
        if self.qorder != other.qorder {
            return Err(SeriesError::OrderMismatch {
                left: self.qorder,
                right: other.qorder,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_, _>>()?;
        Ok(BiSeries {
            zorder: self.zorder,
            qorder: self.qorder,
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_, _>>()?;
        Ok(BiSeries {
            zorder: self.zorder,
            qorder: self.qorder,
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_shape(other)?;
        Ok(BiSeries {
            zorder: self.zorder,
            qorder: self.qorder,
            coeffs: zseries_mul(&self.coeffs, &other.coeffs),
        })
    }

    /// Exponential; the `z^0` coefficient must be the zero series.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        Ok(BiSeries {
            zorder: self.zorder,
            qorder: self.qorder,
            coeffs: zseries_exp(&self.coeffs)?,
        })
    }

    /// Logarithm; the `z^0` coefficient must be the unit series.
    pub fn log(&self) -> Result<Self, SeriesError> {
        Ok(BiSeries {
            zorder: self.zorder,
            qorder: self.qorder,
            coeffs: zseries_log(&self.coeffs)?,
        })
    }

    /// Multiplicative inverse, solved z-triangularly; the `z^0` coefficient
    /// must be invertible as a q-series.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0].inverse()?;
        let mut out = vec![QSeries::zero(self.qorder); self.zorder + 1];
        out[0] = inv0.clone();
        for t in 1..=self.zorder {
            let mut sum = QSeries::zero(self.qorder);
            for s in 1..=t {
                if !self.coeffs[s].is_zero() && !out[t - s].is_zero() {
                    sum = sum.try_add(&self.coeffs[s].try_mul(&out[t - s])?)?;
                }
            }
            out[t] = inv0.try_mul(&sum)?.negated();
        }
        Ok(BiSeries {
            zorder: self.zorder,
            qorder: self.qorder,
            coeffs: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::ratio;

    fn unit_qs(order: usize) -> QSeries {
        QSeries::one(order)
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = BiSeries::zero(3, 4).exp().unwrap();
        assert_eq!(e, BiSeries::one(3, 4));
    }

    #[test]
    fn log_of_one_is_zero() {
        // The MGF of the point mass at 0 is identically 1.
        let l = BiSeries::one(3, 4).log().unwrap();
        assert_eq!(l, BiSeries::zero(3, 4));
    }

    #[test]
    fn log_of_one_plus_linear_term() {
        // log(1 + z*K) = z*K - z^2*K^2/2 at z-order 2.
        let k = QSeries::from_i64(&[0, 1, 2], 6).unwrap();
        let g = BiSeries::from_zcoeffs(vec![unit_qs(6), k.clone(), QSeries::zero(6)]).unwrap();
        let l = g.log().unwrap();
        assert!(l.zcoeff(0).is_zero());
        assert_eq!(l.zcoeff(1), &k);
        assert_eq!(l.zcoeff(2), &(&k * &k).scale(&ratio(-1, 2)));
    }

    #[test]
    fn exp_log_inverse_pair() {
        let a = BiSeries::from_zcoeffs(vec![
            QSeries::zero(5),
            QSeries::from_i64(&[1, -2, 3], 5).unwrap(),
            QSeries::from_i64(&[0, 1, 0, -1], 5).unwrap(),
            QSeries::from_i64(&[2, 0, 5], 5).unwrap(),
        ])
        .unwrap();
        let back = a.exp().unwrap().log().unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn inverse_multiplies_to_one() {
        let a = BiSeries::from_zcoeffs(vec![
            QSeries::from_i64(&[1, 3, -1], 4).unwrap(),
            QSeries::from_i64(&[0, -2, 1], 4).unwrap(),
            QSeries::from_i64(&[5, 0, 0, 1], 4).unwrap(),
        ])
        .unwrap();
        let prod = a.try_mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(prod, BiSeries::one(2, 4));
    }

    #[test]
    fn preconditions_are_checked() {
        assert!(BiSeries::one(2, 3).exp().is_err());
        assert!(BiSeries::zero(2, 3).log().is_err());
        assert!(BiSeries::zero(2, 3).inverse().is_err());
        let mixed = BiSeries::from_zcoeffs(vec![QSeries::one(3), QSeries::one(4)]);
        assert!(mixed.is_err());
    }
}
