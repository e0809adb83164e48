//! Exact (untruncated) polynomials over [`Rational`].
//!
//! Canonical form stores no trailing zero coefficients; the zero polynomial
//! is the empty coefficient list. These house Eulerian polynomials, the
//! exact pmf/moment polynomials in `q`, and forcing polynomials in `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::{format_rational, rat, rational_to_f64, Rational};

/// Dense exact polynomial; `coeffs[i]` is the coefficient of `x^i`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros into canonical form.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self^k` by repeated multiplication (exponents stay small here).
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat(x))
    }

    /// Floating-point evaluation by Horner's rule (simulation references).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Polynomial {
    /// Human-readable rendering in the given variable, e.g. `1 - q + q^3`.
    pub fn render(&self, var: &str) -> String {
        render_terms(var, self.coeffs.iter().enumerate())
    }
}

/// Shared term renderer for polynomials and truncated series.
pub(crate) fn render_terms<'a>(
    var: &str,
    terms: impl Iterator<Item = (usize, &'a Rational)>,
) -> String {
    use num_traits::Signed;
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let magnitude = format_rational(&c.abs());
        if i == 0 {
            out.push_str(&magnitude);
        } else {
            if magnitude != "1" {
                out.push_str(&magnitude);
                out.push('*');
            }
            out.push_str(var);
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::ratio;

    #[test]
    fn canonical_trim() {
        let p = Polynomial::new(vec![rat(1), rat(0), rat(0)]);
        assert_eq!(p.degree(), Some(0));
        assert!(Polynomial::new(vec![rat(0)]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let p = Polynomial::from_i64(&[1, 1]); // 1 + x
        let q = Polynomial::from_i64(&[-1, 1]); // -1 + x
        assert_eq!(&p * &q, Polynomial::from_i64(&[-1, 0, 1]));
        assert_eq!(&p + &q, Polynomial::from_i64(&[0, 2]));
        assert_eq!(&p - &p, Polynomial::zero());
        assert_eq!(p.pow(2), Polynomial::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn evaluation() {
        let p = Polynomial::from_i64(&[1, -3, 2]); // 1 - 3x + 2x^2
        assert_eq!(p.eval(&ratio(1, 2)), Rational::zero());
        assert_eq!(p.eval_int(3), rat(10));
        assert_eq!(p.eval_f64(1.0), 0.0);
    }
}
