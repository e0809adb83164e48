//! Builders for the divisor-generating q-series family and the
//! verification suite that compares them coefficientwise.
//!
//! The same value is reachable along several independent routes:
//!
//! - `divisor_series(m)`: direct coefficients `sigma_(m-1)(n)` by trial
//!   division.
//! - `lambert_series(m)`: the Lambert form `sum n^m q^n / (1 - q^n)`.
//! - `uchimura_weighted(k)`: the weighted tail-product form
//!   `sum n^k q^n (q^(n+1))_inf`.
//! - `ramanujan_side(k)`: the alternating Ramanujan-type sum with Eulerian
//!   numerators and `q^C(n+1,2)` exponents.
//! - `limit_series(spec)`: the stabilized limit of the recurrence
//!   `a_n = f(n) + (1 - q^(n-1)) a_(n-1)`.
//!
//! Each checker computes two routes independently and reports the first
//! mismatching coefficient, if any.

mod report;
mod suite;

pub use report::{IdentityReport, Mismatch, Verdict};
pub use suite::{run_suite, run_suite_with, suite_check_keys, FaultInjection, SuiteParams};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{
    bell_complete, binomial, binomial_shifted_poly, divisor_sigma, eulerian_poly,
    power_difference_poly,
};
use crate::series::{
    pochhammer_finite, pochhammer_tail, rat, BiSeries, Polynomial, QSeries, Rational, SeriesError,
};

/// `K_m`: the generalized divisor generating function
/// `sum_{n>=1} sigma_(m-1)(n) q^n`, truncated at `order`.
pub fn divisor_series(m: usize, order: usize) -> Result<QSeries, SeriesError> {
    if m == 0 {
        return Err(SeriesError::Domain("divisor series index must be positive"));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rational::zero());
    for n in 1..=order as u64 {
        let sigma = divisor_sigma(m as u32 - 1, n).expect("n >= 1");
        coeffs.push(Rational::from_integer(sigma));
    }
    QSeries::from_coeffs(coeffs, order)
}

/// Lambert form `sum_{n=1..order} n^m q^n (1 - q^n)^(-1)`, each denominator
/// inverted in the truncated ring. Equals `divisor_series(m + 1)`.
pub fn lambert_series(m: usize, order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for n in 1..=order {
        let mut denom = QSeries::one(order);
        denom.mul_one_minus_qpow(n);
        let inv = denom.inverse().expect("1 - q^n has unit constant term");
        let weight = Rational::from_integer(BigInt::from(n).pow(m as u32));
        acc = &acc + &inv.shift(n).scale(&weight);
    }
    acc
}

/// Runs `body(n, tail_n_plus_1)` for `n = order` down to `lowest`, where the
/// second argument is `(q^(n+1))_inf` truncated at `order`. The tail is
/// maintained incrementally: `(q^n)_inf = (1 - q^n) (q^(n+1))_inf`.
fn for_each_tail(order: usize, lowest: usize, mut body: impl FnMut(usize, &QSeries)) {
    let mut tail = QSeries::one(order); // (q^(order+1))_inf mod q^(order+1)
    for n in (lowest..=order).rev() {
        body(n, &tail);
        if n > 0 {
            tail.mul_one_minus_qpow(n);
        }
    }
}

/// `M_k`: the weighted tail-product series `sum_{n>=1} n^k q^n (q^(n+1))_inf`
/// truncated at `order` (terms with `n > order` vanish mod `q^(order+1)`).
pub fn uchimura_weighted(k: usize, order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for_each_tail(order, 1, |n, tail| {
        let weight = Rational::from_integer(BigInt::from(n).pow(k as u32));
        acc = &acc + &tail.shift(n).scale(&weight);
    });
    acc
}

/// The telescoping normalization `sum_{l=0..order} q^l (q^(l+1))_inf`,
/// which collapses to exactly 1 in the truncated ring.
pub fn normalization_series(order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for_each_tail(order, 0, |n, tail| {
        acc = &acc + &tail.shift(n);
    });
    acc
}

/// Shared kernel of the alternating Ramanujan-type sums:
/// `sum_n (-1)^(n-1) q^C(n+1,2) A_e(q^n) / ((1-q^n)^d (q)_n)`,
/// summed over `n` with `C(n+1,2) <= order`.
fn ramanujan_alternating(eulerian_k: usize, denom_power: usize, order: usize) -> QSeries {
    let a_k = eulerian_poly(eulerian_k);
    let mut acc = QSeries::zero(order);
    let mut n = 1usize;
    while n * (n + 1) / 2 <= order {
        let exponent = n * (n + 1) / 2;
        let numerator = QSeries::from_polynomial(&a_k, order)
            .substitute_power(n)
            .expect("n >= 1");
        let mut denom = pochhammer_finite(n, order);
        for _ in 0..denom_power {
            denom.mul_one_minus_qpow(n);
        }
        let term = (&numerator * &denom.inverse().expect("unit constant term")).shift(exponent);
        acc = if n % 2 == 1 {
            &acc + &term
        } else {
            &acc - &term
        };
        n += 1;
    }
    acc
}

/// Ramanujan-type form of [`uchimura_weighted`]:
/// `sum_n (-1)^(n-1) q^C(n+1,2) A_k(q^n) / ((1-q^n)^k (q)_n)`.
pub fn ramanujan_side(k: usize, order: usize) -> QSeries {
    ramanujan_alternating(k, k, order)
}

/// Left side of the cumulative power-sum identity:
/// `sum_{n>=1} (1^k + ... + n^k) q^n (q^(n+1))_inf`.
pub fn power_sum_weighted(k: usize, order: usize) -> QSeries {
    let mut prefix = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        prefix[n] = &prefix[n - 1] + BigInt::from(n).pow(k as u32);
    }
    let mut acc = QSeries::zero(order);
    for_each_tail(order, 1, |n, tail| {
        let weight = Rational::from_integer(prefix[n].clone());
        acc = &acc + &tail.shift(n).scale(&weight);
    });
    acc
}

/// Right side of the cumulative power-sum identity: the alternating sum
/// with Eulerian numerator `A_k` and denominator power `k + 1`.
pub fn power_sum_ramanujan(k: usize, order: usize) -> QSeries {
    ramanujan_alternating(k, k + 1, order)
}

/// Binomial-weighted tail-product series
/// `sum_{n>=k} C(n,k) q^n (q^(n+1))_inf` for `k >= 1`.
pub fn dilcher_lhs(k: usize, order: usize) -> Result<QSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::Domain("binomial depth must be positive"));
    }
    let mut acc = QSeries::zero(order);
    for_each_tail(order, 1, |n, tail| {
        if n >= k {
            let weight = Rational::from_integer(binomial(n as u64, k as u64));
            acc = &acc + &tail.shift(n).scale(&weight);
        }
    });
    Ok(acc)
}

/// Ramanujan-type form of [`dilcher_lhs`]:
/// `sum_n (-1)^(n-1) q^(C(n+k,2) - C(k,2)) / ((1-q^n)^k (q)_n)`.
///
/// The `q^(-C(k,2))` prefactor is folded into the exponent before any
/// series is built, so negative powers never exist: for `n >= 1` the
/// exponent `C(n+k,2) - C(k,2)` is at least `k >= 1`.
pub fn dilcher_ramanujan(k: usize, order: usize) -> Result<QSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::Domain("binomial depth must be positive"));
    }
    let offset = k * (k - 1) / 2; // C(k, 2)
    let mut acc = QSeries::zero(order);
    let mut n = 1usize;
    loop {
        let exponent = (n + k) * (n + k - 1) / 2 - offset;
        if exponent > order {
            break;
        }
        let mut denom = pochhammer_finite(n, order);
        for _ in 0..k {
            denom.mul_one_minus_qpow(n);
        }
        let term = denom
            .inverse()
            .expect("unit constant term")
            .shift(exponent);
        acc = if n % 2 == 1 {
            &acc + &term
        } else {
            &acc - &term
        };
        n += 1;
    }
    Ok(acc)
}

/// Nested Lambert form of [`dilcher_lhs`]: the k-fold sum
/// `sum_{j1} q^j1/(1-q^j1) sum_{j2<=j1} ... sum_{jk<=j(k-1)} q^jk/(1-q^jk)`,
/// computed by dynamic programming over the inner truncated sums.
pub fn dilcher_nested(k: usize, order: usize) -> Result<QSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::Domain("binomial depth must be positive"));
    }
    // g[j] = q^j / (1 - q^j); terms with j > order vanish mod q^(order+1).
    let mut g = Vec::with_capacity(order + 1);
    g.push(QSeries::zero(order));
    for j in 1..=order {
        let mut denom = QSeries::one(order);
        denom.mul_one_minus_qpow(j);
        g.push(denom.inverse().expect("unit constant term").shift(j));
    }

    // levels[j] = T_r(j) = sum_{i<=j} g[i] * T_(r-1)(i), with T_0 = 1.
    let mut levels: Vec<QSeries> = Vec::new();
    for r in 1..=k {
        let mut running = QSeries::zero(order);
        let mut next = Vec::with_capacity(order + 1);
        next.push(QSeries::zero(order)); // T_r(0) = empty sum
        for j in 1..=order {
            // g[j] * T_(r-1)(j) has valuation at least j + r - 1.
            if j + r - 1 <= order {
                let term = if r == 1 {
                    g[j].clone()
                } else {
                    &g[j] * &levels[j]
                };
                running = &running + &term;
            }
            next.push(running.clone());
        }
        levels = next;
    }
    Ok(levels.pop().expect("order + 1 entries"))
}

/// The recurrence `a_0 = 0`, `a_n = f(n) + (1 - q^(n-1)) a_(n-1)` driven by
/// a nonzero forcing polynomial `f` with rational coefficients.
///
/// The starting value is immaterial: the `n = 1` step multiplies it by
/// `(1 - q^0) = 0`, so any seed yields the same `a_1 = f(1)`.
#[derive(Debug, Clone)]
pub struct RecurrenceSpec {
    f: Polynomial,
    description: String,
}

impl RecurrenceSpec {
    pub fn new(f: Polynomial, description: impl Into<String>) -> Result<Self, SeriesError> {
        if f.is_zero() {
            return Err(SeriesError::Domain(
                "forcing polynomial must not be identically zero",
            ));
        }
        Ok(RecurrenceSpec {
            f,
            description: description.into(),
        })
    }

    /// `f = 1`; the limit is the divisor series `K_1`.
    pub fn constant_one() -> Self {
        RecurrenceSpec::new(Polynomial::one(), "f(n) = 1").expect("nonzero")
    }

    /// `f(n) = n^k - (n-1)^k` for `k >= 1`; partial sums telescope to `n^k`
    /// and the limit is `uchimura_weighted(k)`.
    pub fn power_sum(k: usize) -> Result<Self, SeriesError> {
        let f = power_difference_poly(k)
            .map_err(|_| SeriesError::Domain("power-sum preset requires k >= 1"))?;
        RecurrenceSpec::new(f, format!("f(n) = n^{k} - (n-1)^{k}"))
    }

    /// `f(n) = C(n-1, k-1)` for `k >= 1`; partial sums telescope to `C(n,k)`
    /// and the limit is `dilcher_lhs(k)`.
    pub fn binomial_column(k: usize) -> Result<Self, SeriesError> {
        let f = binomial_shifted_poly(k)
            .map_err(|_| SeriesError::Domain("binomial preset requires k >= 1"))?;
        RecurrenceSpec::new(f, format!("f(n) = C(n-1, {})", k - 1))
    }

    pub fn forcing(&self) -> &Polynomial {
        &self.f
    }

    pub fn description(&self) -> &str {
        &self.description
    }
}

/// Iterates the recurrence to `a_n` in the truncated ring.
pub fn recurrence_sequence(spec: &RecurrenceSpec, n: usize, order: usize) -> QSeries {
    let mut a = QSeries::zero(order);
    for r in 1..=n {
        a.mul_one_minus_qpow(r - 1);
        a = &a + &QSeries::monomial(spec.f.eval_int(r as i64), 0, order);
    }
    a
}

/// `b_n = sum_{i<=n} f(i) - a_n` computed through the telescoping update
/// `b_n = b_(n-1) + q^(n-1) a_(n-1)`, iterated a caller-chosen number of
/// steps. Increments for `n > order + 1` have valuation above the order, so
/// `iterations = order + 1` already fixes every retained coefficient;
/// larger values must (and do) return the identical series.
pub fn limit_series_iterated(spec: &RecurrenceSpec, iterations: usize, order: usize) -> QSeries {
    let mut a = QSeries::zero(order);
    let mut b = QSeries::zero(order);
    for r in 1..=iterations {
        b = &b + &a.shift(r - 1);
        a.mul_one_minus_qpow(r - 1);
        a = &a + &QSeries::monomial(spec.f.eval_int(r as i64), 0, order);
    }
    b
}

/// The stabilized limit `lim_n (sum_{i<=n} f(i) - a_n)` as a series
/// truncated at `order`, using the exact stabilization bound `order + 1`.
pub fn limit_series(spec: &RecurrenceSpec, order: usize) -> QSeries {
    limit_series_iterated(spec, order + 1, order)
}

/// The closed form the limit must equal:
/// `sum_{n>=1} (sum_{i<=n} f(i)) q^n (q^(n+1))_inf`.
pub fn limit_series_direct(spec: &RecurrenceSpec, order: usize) -> QSeries {
    let mut prefix = Vec::with_capacity(order + 1);
    prefix.push(Rational::zero());
    for n in 1..=order {
        let value = &prefix[n - 1] + spec.f.eval_int(n as i64);
        prefix.push(value);
    }
    let mut acc = QSeries::zero(order);
    for_each_tail(order, 1, |n, tail| {
        acc = &acc + &tail.shift(n).scale(&prefix[n]);
    });
    acc
}

/// Checks the moment identity `M_m = Y_m(K_1, ..., K_m)`: the weighted
/// tail-product series against the complete Bell polynomial of the divisor
/// series.
pub fn moment_bell_check(m: usize, order: usize) -> Result<IdentityReport, SeriesError> {
    if m == 0 {
        return Err(SeriesError::Domain("moment index must be positive"));
    }
    let lhs = uchimura_weighted(m, order);
    let inputs: Vec<QSeries> = (1..=m)
        .map(|i| divisor_series(i, order))
        .collect::<Result<_, _>>()?;
    let rhs = bell_complete(m, &inputs).expect("arity matches by construction");
    Ok(IdentityReport::from_comparison(
        "moment_bell",
        &[("m", m as i64)],
        &lhs,
        &rhs,
    ))
}

/// The moment generating function of the tail-product distribution,
/// `G = sum_{n>=0} e^(nz) q^n (q^(n+1))_inf`, as a bivariate series: the
/// `z^t` coefficient is `sum_n (n^t / t!) q^n (q^(n+1))_inf`.
///
/// Its `z^0` coefficient is [`normalization_series`], which is exactly 1,
/// so the logarithm is always defined.
pub fn reach_mgf(zorder: usize, qorder: usize) -> BiSeries {
    let mut coeffs = vec![QSeries::zero(qorder); zorder + 1];
    for_each_tail(qorder, 0, |n, tail| {
        let shifted = tail.shift(n);
        let mut weight = Rational::one(); // n^t / t!
        for (t, coeff) in coeffs.iter_mut().enumerate() {
            if t > 0 {
                if n == 0 {
                    break;
                }
                weight = weight * rat(n as i64) / rat(t as i64);
            }
            *coeff = &*coeff + &shifted.scale(&weight);
        }
    });
    BiSeries::from_zcoeffs(coeffs).expect("uniform q-order by construction")
}

/// The bivariate tail product `(e^z q)_inf = prod_{l=1..qorder} (1 - e^z q^l)`
/// with `e^z` expanded to `zorder`. Factors with `l > qorder` are 1.
pub fn bivariate_pochhammer(zorder: usize, qorder: usize) -> BiSeries {
    let mut inv_factorial = Vec::with_capacity(zorder + 1);
    let mut factorial = Rational::one();
    for t in 0..=zorder {
        if t > 0 {
            factorial *= rat(t as i64);
        }
        inv_factorial.push(Rational::one() / &factorial);
    }
    let mut coeffs = vec![QSeries::zero(qorder); zorder + 1];
    coeffs[0] = QSeries::one(qorder);
    // Multiply by (1 - e^z q^l): new[t] = old[t] - q^l sum_{s<=t} old[t-s]/s!.
    for l in 1..=qorder {
        let old = coeffs.clone();
        for t in 0..=zorder {
            let mut sum = QSeries::zero(qorder);
            for s in 0..=t {
                if !old[t - s].is_zero() {
                    sum = &sum + &old[t - s].scale(&inv_factorial[s]);
                }
            }
            coeffs[t] = &old[t] - &sum.shift(l);
        }
    }
    BiSeries::from_zcoeffs(coeffs).expect("uniform q-order by construction")
}

/// The closed product form `(q)_inf / (e^z q)_inf` as a bivariate series.
pub fn mgf_closed_form(zorder: usize, qorder: usize) -> BiSeries {
    let euler = pochhammer_tail(1, qorder).expect("start = 1");
    let denominator = bivariate_pochhammer(zorder, qorder);
    BiSeries::from_qseries(&euler, zorder)
        .try_mul(&denominator.inverse().expect("constant term (q)_inf is a unit"))
        .expect("matching shapes")
}

/// Checks that `log G` has `z^t` coefficient `K_t / t!` for `1 <= t <= zorder`
/// and that `G` equals the closed product form, one report per comparison.
pub fn cumulant_gf_check(zorder: usize, qorder: usize) -> Vec<IdentityReport> {
    let g = reach_mgf(zorder, qorder);
    let log_g = g.log().expect("z^0 coefficient is exactly 1");
    let closed = mgf_closed_form(zorder, qorder);
    let mut reports = Vec::new();
    let mut factorial = Rational::one();
    for t in 1..=zorder {
        factorial *= rat(t as i64);
        let lhs = log_g.zcoeff(t).scale(&factorial);
        let rhs = divisor_series(t, qorder).expect("t >= 1");
        reports.push(IdentityReport::from_comparison(
            "cumulant_log",
            &[("t", t as i64)],
            &lhs,
            &rhs,
        ));
    }
    for t in 0..=zorder {
        reports.push(IdentityReport::from_comparison(
            "mgf_product_form",
            &[("t", t as i64)],
            g.zcoeff(t),
            closed.zcoeff(t),
        ));
    }
    reports
}

/// Checks `sum_{t>=1} K_t z^t / t! = log((q)_inf / (e^z q)_inf)` in the
/// bivariate ring, one report per z-degree.
pub fn divisor_log_product_check(zorder: usize, qorder: usize) -> Vec<IdentityReport> {
    let rhs = mgf_closed_form(zorder, qorder)
        .log()
        .expect("z^0 coefficient is exactly 1");
    let mut reports = Vec::new();
    let mut factorial = Rational::one();
    for t in 1..=zorder {
        factorial *= rat(t as i64);
        let lhs = divisor_series(t, qorder)
            .expect("t >= 1")
            .scale(&(Rational::one() / &factorial));
        reports.push(IdentityReport::from_comparison(
            "divisor_log_product",
            &[("t", t as i64)],
            &lhs,
            rhs.zcoeff(t),
        ));
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;

    #[test]
    fn divisor_series_small() {
        // d(n) for n = 1..6: 1, 2, 2, 3, 2, 4.
        assert_eq!(
            divisor_series(1, 6).unwrap(),
            QSeries::from_i64(&[0, 1, 2, 2, 3, 2, 4], 6).unwrap()
        );
        // sigma(n) for n = 1..4: 1, 3, 4, 7.
        assert_eq!(
            divisor_series(2, 4).unwrap(),
            QSeries::from_i64(&[0, 1, 3, 4, 7], 4).unwrap()
        );
        // sigma_2(2) = 1 + 4.
        assert_eq!(
            divisor_series(3, 2).unwrap(),
            QSeries::from_i64(&[0, 1, 5], 2).unwrap()
        );
        assert!(divisor_series(0, 3).is_err());
    }

    #[test]
    fn lambert_equals_divisor() {
        assert_eq!(
            lambert_series(0, 3),
            QSeries::from_i64(&[0, 1, 2, 2], 3).unwrap()
        );
        assert_eq!(lambert_series(1, 4), divisor_series(2, 4).unwrap());
        assert_eq!(lambert_series(2, 1), QSeries::from_i64(&[0, 1], 1).unwrap());
        for m in 0..=6 {
            assert_eq!(
                lambert_series(m, 40),
                divisor_series(m + 1, 40).unwrap(),
                "m={m}"
            );
        }
    }

    #[test]
    fn uchimura_weighted_oracle_values() {
        // k = 1 recovers the divisor series.
        assert_eq!(uchimura_weighted(1, 6), divisor_series(1, 6).unwrap());
        // k = 0: the tail-product sum complements the Euler function,
        // sum_{n>=1} q^n (q^(n+1))_inf = 1 - (q)_inf.
        let order = 24;
        let complement = &QSeries::one(order) - &pochhammer_tail(1, order).unwrap();
        assert_eq!(uchimura_weighted(0, order), complement);
        // k = 2 at N = 3, by expanding the first three products:
        // q(1-q^2-q^3) + 4q^2(1-q^3) + 9q^3 = q + 4q^2 + 8q^3.
        assert_eq!(
            uchimura_weighted(2, 3),
            QSeries::from_i64(&[0, 1, 4, 8], 3).unwrap()
        );
    }

    #[test]
    fn normalization_collapses_to_one() {
        for order in [0, 1, 5, 40] {
            assert!(normalization_series(order).is_one(), "order {order}");
        }
    }

    #[test]
    fn ramanujan_side_matches_weighted() {
        // k = 1 is the classical three-way identity.
        assert_eq!(ramanujan_side(1, 30), divisor_series(1, 30).unwrap());
        // k = 0 reduces to the plain alternating sum.
        assert_eq!(ramanujan_side(0, 20), uchimura_weighted(0, 20));
        assert_eq!(ramanujan_side(3, 25), uchimura_weighted(3, 25));
    }

    #[test]
    fn power_sum_identity_small() {
        // k = 0: the left side is sum n q^n (q^(n+1))_inf, the divisor series.
        assert_eq!(power_sum_weighted(0, 20), uchimura_weighted(1, 20));
        assert_eq!(power_sum_ramanujan(0, 20), divisor_series(1, 20).unwrap());
        for k in 0..=3 {
            assert_eq!(
                power_sum_weighted(k, 25),
                power_sum_ramanujan(k, 25),
                "k={k}"
            );
        }
        // Order 0: no term survives on either side.
        assert!(power_sum_weighted(0, 0).is_zero());
        assert!(power_sum_ramanujan(0, 0).is_zero());
    }

    #[test]
    fn dilcher_three_way() {
        for k in 1..=3 {
            let lhs = dilcher_lhs(k, 20).unwrap();
            assert_eq!(lhs, dilcher_ramanujan(k, 20).unwrap(), "ram k={k}");
            assert_eq!(lhs, dilcher_nested(k, 20).unwrap(), "nested k={k}");
        }
        // k = 1 reduces to the divisor series.
        assert_eq!(dilcher_lhs(1, 15).unwrap(), divisor_series(1, 15).unwrap());
        // k = 2 at N = 3 from the DP oracle:
        // (q+q^2+q^3)^2 + q^2(q+2q^2+q^3) = q^2 + 3q^3 mod q^4.
        assert_eq!(
            dilcher_nested(2, 3).unwrap(),
            QSeries::from_i64(&[0, 0, 1, 3], 3).unwrap()
        );
        assert!(dilcher_lhs(0, 5).is_err());
        assert!(dilcher_ramanujan(0, 5).is_err());
        assert!(dilcher_nested(0, 5).is_err());
    }

    #[test]
    fn recurrence_sequence_oracle() {
        let spec = RecurrenceSpec::constant_one();
        // a_1 = f(1): the (1 - q^0) factor kills any seed.
        assert!(recurrence_sequence(&spec, 1, 4).is_one());
        // a_2 = 1 + (1 - q) * 1 = 2 - q.
        assert_eq!(
            recurrence_sequence(&spec, 2, 4),
            QSeries::from_i64(&[2, -1], 4).unwrap()
        );
        // a_3 = 1 + (1 - q^2)(2 - q) = 3 - q - 2q^2 + q^3.
        assert_eq!(
            recurrence_sequence(&spec, 3, 4),
            QSeries::from_i64(&[3, -1, -2, 1], 4).unwrap()
        );
    }

    #[test]
    fn limit_series_presets() {
        let order = 30;
        assert_eq!(
            limit_series(&RecurrenceSpec::constant_one(), order),
            divisor_series(1, order).unwrap()
        );
        assert_eq!(
            limit_series(&RecurrenceSpec::power_sum(1).unwrap(), order),
            uchimura_weighted(1, order)
        );
        assert_eq!(
            limit_series(&RecurrenceSpec::binomial_column(2).unwrap(), order),
            dilcher_lhs(2, order).unwrap()
        );
    }

    #[test]
    fn limit_series_matches_direct_form() {
        let order = 25;
        let f = Polynomial::new(vec![ratio(1, 2), rat(-3), ratio(2, 7)]);
        let spec = RecurrenceSpec::new(f, "test polynomial").unwrap();
        assert_eq!(
            limit_series(&spec, order),
            limit_series_direct(&spec, order)
        );
    }

    #[test]
    fn limit_series_is_stable() {
        let order = 20;
        let spec = RecurrenceSpec::power_sum(2).unwrap();
        let base = limit_series_iterated(&spec, order + 1, order);
        for extra in [1, 5, 17] {
            assert_eq!(
                limit_series_iterated(&spec, order + 1 + extra, order),
                base,
                "extra {extra}"
            );
        }
    }

    #[test]
    fn moment_bell_small() {
        assert!(moment_bell_check(1, 25).unwrap().passed());
        assert!(moment_bell_check(2, 25).unwrap().passed());
        assert!(moment_bell_check(0, 10).is_err());
    }

    #[test]
    fn zero_forcing_rejected() {
        assert!(RecurrenceSpec::new(Polynomial::zero(), "zero").is_err());
        assert!(RecurrenceSpec::power_sum(0).is_err());
        assert!(RecurrenceSpec::binomial_column(0).is_err());
    }

    #[test]
    fn cumulant_checks_small() {
        for report in cumulant_gf_check(3, 15) {
            assert!(report.passed(), "{report}");
        }
        for report in divisor_log_product_check(3, 15) {
            assert!(report.passed(), "{report}");
        }
        // Order 0: the bivariate ring is constants in q; everything is 0 = 0.
        for report in divisor_log_product_check(2, 0) {
            assert!(report.passed(), "{report}");
        }
    }
}
