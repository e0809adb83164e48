//! The reachable-set size of vertex 1 in a random acyclic digraph on
//! vertices `1..n` (each forward edge present independently with
//! probability `p`), treated exactly.
//!
//! With `q = 1 - p`, the outcome `h` has probability
//! `q^(n-h) prod_{j=1..h-1} (1 - q^(n-j))`, an exact polynomial in `q`.
//! Everything in this module — moments, cumulants, defect moments of
//! `Z_n = n - X_n` — is computed as exact polynomials, and the cumulant
//! limits as stabilized truncated series. The Monte Carlo simulator in
//! [`sim`] cross-checks the same quantities statistically.

pub mod rng;
pub mod sim;
pub mod stats;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{bell_complete, binomial, power_difference_poly};
use crate::identities::{divisor_series, limit_series, IdentityReport, RecurrenceSpec};
use crate::series::{zseries_log, BiSeries, Polynomial, QSeries, Rational, SeriesError};

/// The exact distribution of the reachable-set size: `probs[h - 1]` is
/// `Pr(X_n = h)` as a polynomial in `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmfExact {
    n: usize,
    probs: Vec<Polynomial>,
}

impl PmfExact {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `Pr(X_n = h)` for `1 <= h <= n`.
    pub fn prob(&self, h: usize) -> &Polynomial {
        &self.probs[h - 1]
    }

    pub fn probs(&self) -> &[Polynomial] {
        &self.probs
    }

    /// Evaluates the distribution at a numeric `q`.
    pub fn eval_f64(&self, q: f64) -> Vec<f64> {
        self.probs.iter().map(|p| p.eval_f64(q)).collect()
    }
}

/// Builds the exact pmf: `probs[h-1] = q^(n-h) prod_{j=1..h-1} (1 - q^(n-j))`.
pub fn pmf_exact(n: usize) -> Result<PmfExact, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Domain("vertex count must be positive"));
    }
    let mut probs = Vec::with_capacity(n);
    let mut product = Polynomial::one(); // prod_{j=1..h-1} (1 - q^(n-j))
    for h in 1..=n {
        probs.push(&product * &Polynomial::monomial(Rational::one(), n - h));
        if h < n {
            let mut factor = vec![Rational::zero(); n - h + 1];
            factor[0] = Rational::one();
            factor[n - h] = -Rational::one();
            product = &product * &Polynomial::new(factor);
        }
    }
    Ok(PmfExact { n, probs })
}

/// Raw moment `E(X_n^k)` straight from the pmf: `sum_h h^k Pr(X_n = h)`.
pub fn raw_moment_exact(n: usize, k: usize) -> Result<Polynomial, SeriesError> {
    let pmf = pmf_exact(n)?;
    let mut acc = Polynomial::zero();
    for h in 1..=n {
        let weight = Rational::from_integer(BigInt::from(h).pow(k as u32));
        acc = &acc + &pmf.prob(h).scale(&weight);
    }
    Ok(acc)
}

/// The auxiliary polynomial sequence behind the moment recurrence:
/// `a_0 = 0`, `a_r = d_k(r) + (1 - q^(r-1)) a_(r-1)` where
/// `d_k(n) = n^k - (n-1)^k`. For `k = 1` this is `E(X_n)` itself; in
/// general `a_(n,k) = n^k - E((n - X_n)^k)`.
pub fn recurrence_moment_poly(n: usize, k: usize) -> Result<Polynomial, SeriesError> {
    if k == 0 {
        return Err(SeriesError::Domain("moment index must be positive"));
    }
    let forcing = power_difference_poly(k).expect("k >= 1");
    let mut a = Polynomial::zero();
    for r in 1..=n {
        let mut factor = vec![Rational::zero(); r.max(2) - 1 + 1];
        factor[0] = Rational::one();
        factor[r - 1] -= Rational::one(); // r = 1 gives the zero polynomial
        a = &(&a * &Polynomial::new(factor)) + &Polynomial::constant(forcing.eval_int(r as i64));
    }
    Ok(a)
}

/// Raw moment rebuilt through the recurrence route:
/// `E(X_n^k) = sum_{l=1..k} C(k,l) (-1)^(l-1) n^(k-l) a_(n,l)`.
/// Must agree with [`raw_moment_exact`].
pub fn raw_moment_recurrence(n: usize, k: usize) -> Result<Polynomial, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Domain("vertex count must be positive"));
    }
    if k == 0 {
        return Ok(Polynomial::one());
    }
    let mut acc = Polynomial::zero();
    for l in 1..=k {
        let a = recurrence_moment_poly(n, l)?;
        let mut coeff = Rational::from_integer(
            binomial(k as u64, l as u64) * BigInt::from(n).pow((k - l) as u32),
        );
        if l % 2 == 0 {
            coeff = -coeff;
        }
        acc = &acc + &a.scale(&coeff);
    }
    Ok(acc)
}

/// Defect moment `E(Z_n^k)` with `Z_n = n - X_n`, straight from the pmf.
/// Must equal `n^k - a_(n,k)`.
pub fn defect_moment_exact(n: usize, k: usize) -> Result<Polynomial, SeriesError> {
    let pmf = pmf_exact(n)?;
    let mut acc = Polynomial::zero();
    for h in 1..=n {
        // BigInt's pow gives 0^0 = 1, which is the right convention for the
        // h = n term of the zeroth moment.
        let weight = Rational::from_integer(BigInt::from((n - h) as u64).pow(k as u32));
        if !weight.is_zero() {
            acc = &acc + &pmf.prob(h).scale(&weight);
        }
    }
    Ok(acc)
}

/// Exact cumulants of `X_n` as polynomials in `q`: `kappa[t - 1]` is
/// `kappa_t(X_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulantSet {
    n: usize,
    kappa: Vec<Polynomial>,
}

impl CumulantSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `kappa_t(X_n)` for `1 <= t <= tmax`.
    pub fn kappa(&self, t: usize) -> &Polynomial {
        &self.kappa[t - 1]
    }

    pub fn kappas(&self) -> &[Polynomial] {
        &self.kappa
    }
}

/// Log of the moment series: builds the truncated MGF
/// `sum_t E(X^t) z^t / t!` over exact polynomials, takes the truncated
/// logarithm, and rescales by `t!`.
fn cumulants_from_moments(moments: &[Polynomial]) -> Vec<Polynomial> {
    let mut mgf = Vec::with_capacity(moments.len() + 1);
    mgf.push(Polynomial::one());
    let mut factorial = Rational::one();
    for (t, m) in moments.iter().enumerate() {
        factorial *= Rational::from_integer(BigInt::from(t as u64 + 1));
        mgf.push(m.scale(&(Rational::one() / &factorial)));
    }
    let log = zseries_log(&mgf).expect("constant coefficient is exactly 1");
    let mut kappa = Vec::with_capacity(moments.len());
    let mut factorial = Rational::one();
    for (t, l) in log.iter().skip(1).enumerate() {
        factorial *= Rational::from_integer(BigInt::from(t as u64 + 1));
        kappa.push(l.scale(&factorial));
    }
    kappa
}

/// Exact cumulants `kappa_1(X_n) .. kappa_tmax(X_n)` through the log of the
/// exact MGF.
pub fn cumulants_exact(n: usize, tmax: usize) -> Result<CumulantSet, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Domain("vertex count must be positive"));
    }
    if tmax == 0 {
        return Err(SeriesError::Domain("cumulant order must be positive"));
    }
    let moments: Vec<Polynomial> = (1..=tmax)
        .map(|t| raw_moment_exact(n, t))
        .collect::<Result<_, _>>()?;
    Ok(CumulantSet {
        n,
        kappa: cumulants_from_moments(&moments),
    })
}

/// Exact cumulants of the defect `Z_n = n - X_n`. For `t >= 2`,
/// `kappa_t(Z_n) = (-1)^t kappa_t(X_n)` exactly.
pub fn defect_cumulants_exact(n: usize, tmax: usize) -> Result<CumulantSet, SeriesError> {
    if n == 0 {
        return Err(SeriesError::Domain("vertex count must be positive"));
    }
    if tmax == 0 {
        return Err(SeriesError::Domain("cumulant order must be positive"));
    }
    let moments: Vec<Polynomial> = (1..=tmax)
        .map(|t| defect_moment_exact(n, t))
        .collect::<Result<_, _>>()?;
    Ok(CumulantSet {
        n,
        kappa: cumulants_from_moments(&moments),
    })
}

/// Cumulant limits `lim_n kappa_t(Z_n)` for `t = 1..tmax` as series
/// truncated at `order`.
///
/// The defect moments stabilize to the weighted tail-product series: each
/// `lim E(Z_n^k)` is computed through [`limit_series`] over the telescoping
/// forcing `n^k - (n-1)^k`, the limits are assembled into a bivariate MGF,
/// and its log yields the cumulants. Each equals the divisor series `K_t`,
/// so `lim kappa_t(X_n) = (-1)^t K_t` for `t >= 2`.
pub fn limit_cumulants(tmax: usize, order: usize) -> Result<Vec<QSeries>, SeriesError> {
    if tmax == 0 {
        return Err(SeriesError::Domain("cumulant order must be positive"));
    }
    let mut zcoeffs = Vec::with_capacity(tmax + 1);
    zcoeffs.push(QSeries::one(order));
    let mut factorial = Rational::one();
    for k in 1..=tmax {
        factorial *= Rational::from_integer(BigInt::from(k as u64));
        let moment = limit_series(&RecurrenceSpec::power_sum(k)?, order);
        zcoeffs.push(moment.scale(&(Rational::one() / &factorial)));
    }
    let mgf = BiSeries::from_zcoeffs(zcoeffs)?;
    let log = mgf.log()?;
    let mut kappa = Vec::with_capacity(tmax);
    let mut factorial = Rational::one();
    for t in 1..=tmax {
        factorial *= Rational::from_integer(BigInt::from(t as u64));
        kappa.push(log.zcoeff(t).scale(&factorial));
    }
    Ok(kappa)
}

/// The `t`-th cumulant limit alone; see [`limit_cumulants`].
pub fn limit_cumulant(t: usize, order: usize) -> Result<QSeries, SeriesError> {
    Ok(limit_cumulants(t, order)?.pop().expect("t entries"))
}

/// Cross-checks the explicit third/fourth/fifth cumulant combinations: with
/// `Y_k` the complete Bell polynomial of the divisor series `K_1..K_k`
/// (the limiting defect moments), the raw-moment cumulant combination of
/// `Y_1..Y_t` must reproduce `K_t`, equivalently `(-1)^t K_t` after the
/// defect sign flip back to `X_n`.
pub fn bell_cumulant_check(t: usize, order: usize) -> Result<IdentityReport, SeriesError> {
    if !(3..=5).contains(&t) {
        return Err(SeriesError::Domain(
            "explicit combinations are provided for t = 3, 4, 5",
        ));
    }
    let y: Vec<QSeries> = (1..=t)
        .map(|k| {
            let inputs: Vec<QSeries> = (1..=k)
                .map(|i| divisor_series(i, order).expect("i >= 1"))
                .collect();
            bell_complete(k, &inputs).expect("arity matches")
        })
        .collect();
    let combo = match t {
        // kappa_3 = m3 - 3 m2 m1 + 2 m1^3
        3 => {
            let mut acc = y[2].clone();
            acc = &acc - &(&y[1] * &y[0]).scale(&Rational::from_integer(3.into()));
            acc = &acc + &(&(&y[0] * &y[0]) * &y[0]).scale(&Rational::from_integer(2.into()));
            acc
        }
        // kappa_4 = m4 - 4 m3 m1 - 3 m2^2 + 12 m2 m1^2 - 6 m1^4
        4 => {
            let y1sq = &y[0] * &y[0];
            let mut acc = y[3].clone();
            acc = &acc - &(&y[2] * &y[0]).scale(&Rational::from_integer(4.into()));
            acc = &acc - &(&y[1] * &y[1]).scale(&Rational::from_integer(3.into()));
            acc = &acc + &(&y[1] * &y1sq).scale(&Rational::from_integer(12.into()));
            acc = &acc - &(&y1sq * &y1sq).scale(&Rational::from_integer(6.into()));
            acc
        }
        // kappa_5 = m5 - 5 m4 m1 - 10 m3 m2 + 20 m3 m1^2 + 30 m2^2 m1
        //           - 60 m2 m1^3 + 24 m1^5
        _ => {
            let y1sq = &y[0] * &y[0];
            let y1cu = &y1sq * &y[0];
            let mut acc = y[4].clone();
            acc = &acc - &(&y[3] * &y[0]).scale(&Rational::from_integer(5.into()));
            acc = &acc - &(&y[2] * &y[1]).scale(&Rational::from_integer(10.into()));
            acc = &acc + &(&y[2] * &y1sq).scale(&Rational::from_integer(20.into()));
            acc = &acc + &(&(&y[1] * &y[1]) * &y[0]).scale(&Rational::from_integer(30.into()));
            acc = &acc - &(&y[1] * &y1cu).scale(&Rational::from_integer(60.into()));
            acc = &acc + &(&y1sq * &y1cu).scale(&Rational::from_integer(24.into()));
            acc
        }
    };
    let rhs = divisor_series(t, order)?;
    Ok(IdentityReport::from_comparison(
        "bell_cumulant",
        &[("t", t as i64)],
        &combo,
        &rhs,
    ))
}
