//! Exact combinatorial primitives: divisor sums, binomials, Bernoulli
//! numbers, Eulerian polynomials, complete Bell polynomials, and power-sum
//! machinery.
//!
//! Conventions fixed here:
//! - Bernoulli numbers follow the `x/(e^x - 1)` generating function, so
//!   `B_1 = -1/2`.
//! - Eulerian polynomials satisfy `A_0 = 1` and
//!   `A_k(t) = sum_{j=0..k-1} C(k,j) A_j(t) (t-1)^(k-1-j)`, which gives
//!   `A_1 = 1`, `A_2 = 1 + t`, `A_3 = 1 + 4t + t^2`, ...
//!
//! Bernoulli and Eulerian values are memoized behind a mutex; the tables
//! only ever grow and entries are immutable once computed, so observable
//! behavior is identical across threads.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{rat, CoefficientRing, Polynomial, QSeries, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("{0} must be positive")]
    ZeroArgument(&'static str),
    #[error("expected {expected} ring elements, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Batch table of divisor power sums: `sigma_m(n)` for every requested
/// power `m` and every `n = 1..=max_n`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    max_n: u64,
    powers: Vec<u32>,
    values: Vec<Vec<BigInt>>,
}

impl DivisorTable {
    pub fn build(powers: &[u32], max_n: u64) -> Result<Self, CombinatoricsError> {
        if max_n == 0 {
            return Err(CombinatoricsError::ZeroArgument("max_n"));
        }
        let values = powers
            .iter()
            .map(|&m| {
                (1..=max_n)
                    .map(|n| divisor_sigma(m, n).expect("n >= 1"))
                    .collect()
            })
            .collect();
        Ok(DivisorTable {
            max_n,
            powers: powers.to_vec(),
            values,
        })
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    /// `sigma_m(n)`; `None` when `m` was not requested or `n` is out of
    /// range.
    pub fn sigma(&self, m: u32, n: u64) -> Option<&BigInt> {
        let row = self.powers.iter().position(|&p| p == m)?;
        if n == 0 || n > self.max_n {
            return None;
        }
        Some(&self.values[row][(n - 1) as usize])
    }

    /// All of `sigma_m(1..=max_n)` for one requested power.
    pub fn row(&self, m: u32) -> Option<&[BigInt]> {
        let row = self.powers.iter().position(|&p| p == m)?;
        Some(&self.values[row])
    }
}

/// Sum of the m-th powers of the divisors of `n`, by trial division up to
/// `sqrt(n)`. `sigma_0` counts divisors.
pub fn divisor_sigma(m: u32, n: u64) -> Result<BigInt, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::ZeroArgument("n"));
    }
    let mut sum = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            sum += BigInt::from(d).pow(m);
            let partner = n / d;
            if partner != d {
                sum += BigInt::from(partner).pow(m);
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn binomial_rat(n: u64, k: u64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_j` in the `B_1 = -1/2` convention, from the
/// recurrence `sum_{j=0..m} C(m+1, j) B_j = 0` forced by the generating
/// function `x/(e^x - 1)`. Memoized per process.
pub fn bernoulli(j: usize) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= j {
        let m = cache.len();
        let mut sum = Rational::zero();
        for (i, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                sum += binomial_rat(m as u64 + 1, i as u64) * b;
            }
        }
        let value = -sum / binomial_rat(m as u64 + 1, m as u64);
        cache.push(value);
    }
    cache[j].clone()
}

static EULERIAN_CACHE: Mutex<Vec<Polynomial>> = Mutex::new(Vec::new());

/// Eulerian polynomial `A_k(t)`, memoized per process.
pub fn eulerian_poly(k: usize) -> Polynomial {
    let mut cache = EULERIAN_CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(Polynomial::one());
    }
    while cache.len() <= k {
        let m = cache.len();
        let t_minus_1 = Polynomial::from_i64(&[-1, 1]);
        let mut sum = Polynomial::zero();
        for (j, a_j) in cache.iter().enumerate() {
            let term = &a_j.scale(&binomial_rat(m as u64, j as u64)) * &t_minus_1.pow(m - 1 - j);
            sum = &sum + &term;
        }
        cache.push(sum);
    }
    cache[k].clone()
}

/// Verifies `sum_{n>=1} n^k q^n = q A_k(q) / (1-q)^(k+1)` coefficientwise
/// to the given order.
pub fn power_sum_gf_check(k: usize, order: usize) -> bool {
    let mut direct = Vec::with_capacity(order + 1);
    direct.push(Rational::zero());
    for n in 1..=order as u64 {
        direct.push(Rational::from_integer(BigInt::from(n).pow(k as u32)));
    }
    let lhs = QSeries::from_coeffs(direct, order).expect("order + 1 coefficients");

    let numerator = QSeries::from_polynomial(&eulerian_poly(k), order).shift(1);
    let denom = {
        let one_minus_q = QSeries::from_i64(&[1, -1], order).expect("fits");
        let mut acc = QSeries::one(order);
        for _ in 0..=k {
            acc = &acc * &one_minus_q;
        }
        acc
    };
    let rhs = &numerator * &denom.inverse().expect("1 - q is invertible");
    lhs == rhs
}

/// Sum `1^k + 2^k + ... + (n-1)^k` evaluated through the Bernoulli
/// closed form `(1/(k+1)) sum_{j=0..k} C(k+1, j) B_j n^(k+1-j)`.
///
/// The closed form equals the power sum extended down to `m = 0` (with
/// `0^0 = 1`), so the `k = 0` case subtracts that one extra term.
pub fn faulhaber_sum(k: usize, n: u64) -> Result<Rational, CombinatoricsError> {
    if n == 0 {
        return Err(CombinatoricsError::ZeroArgument("n"));
    }
    let n_rat = Rational::from_integer(BigInt::from(n));
    let mut sum = Rational::zero();
    let mut n_power = n_rat.clone(); // n^(k+1-j), starting at j = k
    for j in (0..=k).rev() {
        let b = bernoulli(j);
        if !b.is_zero() {
            sum += binomial_rat(k as u64 + 1, j as u64) * b * &n_power;
        }
        n_power *= &n_rat;
    }
    let mut result = sum / rat(k as i64 + 1);
    if k == 0 {
        result -= Rational::one();
    }
    Ok(result)
}

/// Complete Bell polynomial `Y_m(u_1, ..., u_m)` over any commutative ring
/// with rational scalars, by the recurrence
/// `Y_0 = 1`, `Y_(r+1) = sum_{i=0..r} C(r, i) Y_(r-i) u_(i+1)`.
pub fn bell_complete<T: CoefficientRing>(m: usize, u: &[T]) -> Result<T, CombinatoricsError> {
    if m == 0 || u.len() != m {
        return Err(CombinatoricsError::ArityMismatch {
            expected: m,
            got: u.len(),
        });
    }
    let mut bell: Vec<T> = Vec::with_capacity(m + 1);
    bell.push(T::one_like(&u[0]));
    for r in 0..m {
        let mut next = T::zero_like(&u[0]);
        for i in 0..=r {
            let c = binomial_rat(r as u64, i as u64);
            let term = bell[r - i].ring_mul(&u[i]).ring_scale(&c);
            next = next.ring_add(&term);
        }
        bell.push(next);
    }
    Ok(bell.pop().expect("m + 1 entries were pushed"))
}

/// Checks the Bernoulli/Eulerian bridge
/// `(1/(k+1)) sum_{j=0..k} C(k+1,j) B_j (1-t)^j A_(k+1-j)(t) = t A_k(t)`
/// as an exact polynomial identity.
///
/// The identity holds for every `k >= 1`. At `k = 0` the left side is
/// `A_1(t) = 1` while the right side is `t`, so the check reports false;
/// this is the same `m = 0` boundary shift that [`faulhaber_sum`] corrects.
pub fn eulerian_bernoulli_check(k: usize) -> bool {
    let one_minus_t = Polynomial::from_i64(&[1, -1]);
    let mut sum = Polynomial::zero();
    for j in 0..=k {
        let b = bernoulli(j);
        if b.is_zero() {
            continue;
        }
        let coeff = binomial_rat(k as u64 + 1, j as u64) * b;
        let term = &one_minus_t.pow(j) * &eulerian_poly(k + 1 - j);
        sum = &sum + &term.scale(&coeff);
    }
    let lhs = sum.scale(&(Rational::one() / rat(k as i64 + 1)));
    let rhs = &Polynomial::from_i64(&[0, 1]) * &eulerian_poly(k);
    lhs == rhs
}

/// The finite difference `n^k - (n-1)^k` expanded as a polynomial in `n`:
/// `sum_{j=1..k} C(k,j) (-1)^(j-1) n^(k-j)`. Its partial sums telescope,
/// `sum_{i=1..n} p(i) = n^k`.
pub fn power_difference_poly(k: usize) -> Result<Polynomial, CombinatoricsError> {
    if k == 0 {
        return Err(CombinatoricsError::ZeroArgument("k"));
    }
    let mut coeffs = vec![Rational::zero(); k];
    for j in 1..=k {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        coeffs[k - j] = binomial_rat(k as u64, j as u64) * rat(sign);
    }
    Ok(Polynomial::new(coeffs))
}

/// `C(n-1, k-1)` as a polynomial in `n`: `prod_{i=1..k-1} (n-i) / (k-1)!`.
/// Its partial sums telescope to `C(n, k)` (hockey stick).
pub fn binomial_shifted_poly(k: usize) -> Result<Polynomial, CombinatoricsError> {
    if k == 0 {
        return Err(CombinatoricsError::ZeroArgument("k"));
    }
    let mut acc = Polynomial::one();
    let mut factorial = Rational::one();
    for i in 1..k {
        acc = &acc * &Polynomial::new(vec![rat(-(i as i64)), Rational::one()]);
        factorial *= rat(i as i64);
    }
    Ok(acc.scale(&(Rational::one() / factorial)))
}
