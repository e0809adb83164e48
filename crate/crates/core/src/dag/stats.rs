//! Floating-point statistics for the Monte Carlo side: plug-in cumulants
//! from raw moments, and a Pearson chi-square goodness-of-fit test with a
//! regularized-incomplete-gamma p-value.

use serde::Serialize;

/// Plug-in (biased, consistent) cumulants from the first five raw moments.
pub fn cumulants_from_raw_moments(m: &[f64; 5]) -> [f64; 5] {
    let (m1, m2, m3, m4, m5) = (m[0], m[1], m[2], m[3], m[4]);
    let k1 = m1;
    let k2 = m2 - m1 * m1;
    let k3 = m3 - 3.0 * m2 * m1 + 2.0 * m1.powi(3);
    let k4 = m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1.powi(4);
    let k5 = m5 - 5.0 * m4 * m1 - 10.0 * m3 * m2 + 20.0 * m3 * m1 * m1 + 30.0 * m2 * m2 * m1
        - 60.0 * m2 * m1.powi(3)
        + 24.0 * m1.powi(5);
    [k1, k2, k3, k4, k5]
}

/// `ln Gamma(x)` for `x > 0` (Lanczos, g = 7, 9 coefficients).
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507343278686905,
        -0.13857109526572012,
        9.984_369_578_019_572e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.999_999_999_999_809_9;
    for (i, c) in COEFFS.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma `P(a, x)`, series for `x < a + 1`
/// and continued fraction otherwise.
pub fn regularized_gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "P(a, x) needs a > 0, x >= 0");
    if x == 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        gamma_p_series(a, x)
    } else {
        1.0 - gamma_q_continued_fraction(a, x)
    }
}

fn gamma_p_series(a: f64, x: f64) -> f64 {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..500 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-16 {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_q_continued_fraction(a: f64, x: f64) -> f64 {
    // Lentz's algorithm for the continued fraction of Q(a, x).
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Survival function of the chi-square distribution with `df` degrees of
/// freedom: `Pr(X > x)`.
pub fn chi_square_sf(x: f64, df: f64) -> f64 {
    1.0 - regularized_gamma_p(df / 2.0, x / 2.0)
}

/// Outcome of a Pearson chi-square goodness-of-fit test.
#[derive(Debug, Clone, Serialize)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson chi-square test of observed counts against cell probabilities.
///
/// Adjacent cells are pooled left-to-right until each pooled cell has
/// expected count at least 5 (the usual validity rule); a trailing
/// undersized remainder is pooled into the last cell.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> ChiSquareTest {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let total_f = total as f64;

    let mut pooled: Vec<(f64, f64)> = Vec::new(); // (observed, expected)
    let mut acc_obs = 0.0;
    let mut acc_exp = 0.0;
    for (&o, &p) in observed.iter().zip(probs) {
        acc_obs += o as f64;
        acc_exp += p * total_f;
        if acc_exp >= 5.0 {
            pooled.push((acc_obs, acc_exp));
            acc_obs = 0.0;
            acc_exp = 0.0;
        }
    }
    if acc_exp > 0.0 || acc_obs > 0.0 {
        if let Some(last) = pooled.last_mut() {
            last.0 += acc_obs;
            last.1 += acc_exp;
        } else {
            pooled.push((acc_obs, acc_exp));
        }
    }

    let statistic: f64 = pooled
        .iter()
        .map(|(o, e)| {
            let diff = o - e;
            diff * diff / e
        })
        .sum();
    let dof = pooled.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        chi_square_sf(statistic, dof as f64)
    };
    ChiSquareTest {
        statistic,
        dof,
        p_value,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn ln_gamma_known_values() {
        close(ln_gamma(1.0), 0.0, 1e-12);
        close(ln_gamma(2.0), 0.0, 1e-12);
        close(ln_gamma(5.0), 24.0f64.ln(), 1e-12);
        close(ln_gamma(0.5), std::f64::consts::PI.sqrt().ln(), 1e-12);
    }

    #[test]
    fn chi_square_survival_known_values() {
        // Exponential special case: df = 2 gives sf(x) = exp(-x/2).
        close(chi_square_sf(3.0, 2.0), (-1.5f64).exp(), 1e-12);
        // Standard table value: P(chi2_5 > 11.0705) = 0.05.
        close(chi_square_sf(11.0705, 5.0), 0.05, 1e-4);
        close(chi_square_sf(0.0, 4.0), 1.0, 1e-15);
    }

    #[test]
    fn gof_reference_case() {
        // Uniform die with 4 faces; classical worked example.
        let observed = [28u64, 31, 40, 35];
        let probs = [0.25f64; 4];
        let test = chi_square_gof(&observed, &probs);
        close(test.statistic, 2.417910447761194, 1e-9);
        assert_eq!(test.dof, 3);
        close(test.p_value, 0.49030930696538826, 1e-9);
    }

    #[test]
    fn gof_pools_small_cells() {
        // Middle cell has expected 0.4 < 5 and pools into the tail cell.
        let observed = [89u64, 1, 10];
        let probs = [0.90, 0.004, 0.096];
        let test = chi_square_gof(&observed, &probs);
        assert_eq!(test.dof, 1);
        assert!(test.p_value > 0.1);

        // A trailing undersized remainder pools backward, which can leave a
        // single cell and a degenerate test.
        let tiny = chi_square_gof(&[96, 1, 3], &[0.96, 0.004, 0.036]);
        assert_eq!(tiny.dof, 0);
        assert_eq!(tiny.p_value, 1.0);
    }

    #[test]
    fn plug_in_cumulants_of_bernoulli() {
        // Bernoulli(p): raw moments are all p.
        let p: f64 = 0.3;
        let k = cumulants_from_raw_moments(&[p; 5]);
        let q = 1.0 - p;
        close(k[0], p, 1e-12);
        close(k[1], p * q, 1e-12);
        close(k[2], p * q * (1.0 - 2.0 * p), 1e-12);
        close(k[3], p * q * (1.0 - 6.0 * p * q), 1e-12);
        close(k[4], p * q * (1.0 - 2.0 * p) * (1.0 - 12.0 * p * q), 1e-12);
    }
}
