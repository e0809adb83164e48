//! Seeded Monte Carlo simulation of the reachable-set size, with exact and
//! limit reference values attached to every report.
//!
//! Determinism contract: sampling is split into fixed-size chunks, chunk
//! `c` draws from `Xoshiro256::substream(seed, c)`, and bootstrap replicate
//! `b` from `substream(seed, BOOTSTRAP_BASE + b)`. Aggregation over chunks
//! sums exact integer histograms, so a report depends only on the config —
//! never on thread count or scheduling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rng::Xoshiro256;
use super::stats::{chi_square_gof, cumulants_from_raw_moments, ChiSquareTest};
use super::{cumulants_exact, limit_cumulants, pmf_exact};

const CHUNK: u64 = 1 << 14;
const BOOTSTRAP_BASE: u64 = 1 << 32;
/// Truncation order of the attached limit references.
pub const LIMIT_REFERENCE_ORDER: usize = 60;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("vertex count must be at least 1")]
    ZeroVertices,
    #[error("edge probability must lie strictly between 0 and 1")]
    ProbabilityOutOfRange,
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("bootstrap resample count must be at least 1")]
    ZeroBootstrap,
}

/// How a single outcome is drawn. The three methods are interchangeable in
/// distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    /// Sample forward edges `i -> j` (`i < j`) with probability `p` and
    /// count the vertices reachable from vertex 1 by search. Edges are
    /// drawn lazily on first examination, which is distributionally
    /// identical to drawing the whole graph up front.
    DirectGraph,
    /// Grow the reachable count `s` one candidate vertex at a time; the
    /// next vertex joins with probability `1 - q^s`.
    PureBirth,
    /// Invert the exact cdf evaluated at `q`.
    InverseCdf,
}

impl SampleMethod {
    pub fn name(&self) -> &'static str {
        match self {
            SampleMethod::DirectGraph => "direct-graph",
            SampleMethod::PureBirth => "pure-birth",
            SampleMethod::InverseCdf => "inverse-cdf",
        }
    }
}

impl std::str::FromStr for SampleMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct-graph" => Ok(SampleMethod::DirectGraph),
            "pure-birth" => Ok(SampleMethod::PureBirth),
            "inverse-cdf" => Ok(SampleMethod::InverseCdf),
            other => Err(format!(
                "unknown method {other:?} (expected direct-graph, pure-birth, or inverse-cdf)"
            )),
        }
    }
}

/// Simulation parameters. `q = 1 - p` is derived, never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: u32,
    pub p: f64,
    pub samples: u64,
    pub seed: u64,
    pub method: SampleMethod,
    /// Bootstrap resample count for the confidence intervals.
    pub bootstrap: u32,
}

impl SimConfig {
    pub fn new(n: u32, p: f64, samples: u64, seed: u64, method: SampleMethod) -> Self {
        SimConfig {
            n,
            p,
            samples,
            seed,
            method,
            bootstrap: 1000,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::ZeroVertices);
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(ConfigError::ProbabilityOutOfRange);
        }
        if self.samples == 0 {
            return Err(ConfigError::ZeroSamples);
        }
        if self.bootstrap == 0 {
            return Err(ConfigError::ZeroBootstrap);
        }
        Ok(())
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }
}

/// Prepared sampler for one configuration.
pub struct GammaSampler {
    n: u32,
    p: f64,
    q: f64,
    method: SampleMethod,
    /// Cumulative distribution, present for the inverse-cdf method.
    cdf: Vec<f64>,
}

impl GammaSampler {
    pub fn new(n: u32, p: f64, method: SampleMethod) -> Self {
        let q = 1.0 - p;
        let cdf = match method {
            SampleMethod::InverseCdf => {
                let probs = pmf_exact(n as usize)
                    .expect("n >= 1 validated by config")
                    .eval_f64(q);
                let mut acc = 0.0;
                let mut cdf: Vec<f64> = probs
                    .iter()
                    .map(|p| {
                        acc += p;
                        acc
                    })
                    .collect();
                if let Some(last) = cdf.last_mut() {
                    *last = 1.0; // guard against rounding at the top cell
                }
                cdf
            }
            _ => Vec::new(),
        };
        GammaSampler { n, p, q, method, cdf }
    }

    /// Draws one outcome `h` in `1..=n`.
    pub fn sample(&self, rng: &mut Xoshiro256) -> u32 {
        match self.method {
            SampleMethod::DirectGraph => self.sample_direct(rng),
            SampleMethod::PureBirth => self.sample_pure_birth(rng),
            SampleMethod::InverseCdf => {
                let u = rng.next_f64();
                (self.cdf.partition_point(|&c| c <= u) + 1).min(self.n as usize) as u32
            }
        }
    }

    fn sample_direct(&self, rng: &mut Xoshiro256) -> u32 {
        let n = self.n as usize;
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1u32;
        while let Some(u) = stack.pop() {
            for (v, seen) in visited.iter_mut().enumerate().skip(u + 1) {
                if !*seen && rng.bernoulli(self.p) {
                    *seen = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count
    }

    fn sample_pure_birth(&self, rng: &mut Xoshiro256) -> u32 {
        let mut size = 1u32;
        for _ in 1..self.n {
            let join = 1.0 - self.q.powi(size as i32);
            if rng.bernoulli(join) {
                size += 1;
            }
        }
        size
    }
}

/// Draws one outcome using a fresh sampler; conveys the per-call contract
/// of the three methods. Hot paths prepare a [`GammaSampler`] once instead.
pub fn sample_gamma(config: &SimConfig, rng: &mut Xoshiro256) -> u32 {
    GammaSampler::new(config.n, config.p, config.method).sample(rng)
}

/// Simulation report: estimates, bootstrap intervals, and the exact and
/// limit references they are checked against. All floating values are
/// rounded to 12 significant digits so serialized output is byte-stable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    /// Empirical raw moments, orders 1..=5.
    pub moments: [f64; 5],
    /// Plug-in sample cumulants, orders 1..=5.
    pub cumulants: [f64; 5],
    /// Bootstrap percentile interval for each cumulant.
    pub cumulant_ci: [[f64; 2]; 5],
    /// Two-sided confidence level of the intervals.
    pub ci_level: f64,
    /// Exact cumulants of the finite-n distribution, evaluated at `q`.
    pub exact_cumulants: [f64; 5],
    /// Stabilized cumulant limits of the defect `n - X_n` (the divisor
    /// series), truncated at `limit_order` and evaluated at `q`. For
    /// `t >= 2` the finite-n cumulant approaches `(-1)^t` times this; the
    /// mean satisfies `n - kappa_1 -> limit`.
    pub limit_cumulants: [f64; 5],
    pub limit_order: usize,
}

/// Rounds to 12 significant digits; the shortest round-trip decimal of the
/// result then has at most 12 significant digits.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("format output parses")
}

fn histogram(config: &SimConfig) -> Vec<u64> {
    let sampler = GammaSampler::new(config.n, config.p, config.method);
    let chunks = config.samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = Xoshiro256::substream(config.seed, c);
            let len = CHUNK.min(config.samples - c * CHUNK);
            let mut hist = vec![0u64; config.n as usize];
            for _ in 0..len {
                let h = sampler.sample(&mut rng);
                hist[(h - 1) as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; config.n as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    *x += y;
                }
                a
            },
        )
}

/// Raw moments 1..=5 of a histogram over outcomes `1..=n`, via exact
/// integer power sums.
fn moments_of_histogram(hist: &[u64], samples: u64) -> [f64; 5] {
    let mut sums = [0u128; 5];
    for (idx, &count) in hist.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let h = (idx + 1) as u128;
        let mut power = 1u128;
        for sum in &mut sums {
            power *= h;
            *sum += count as u128 * power;
        }
    }
    let total = samples as f64;
    sums.map(|s| s as f64 / total)
}

/// Bootstrap percentile intervals for the five cumulants, resampling the
/// empirical histogram `bootstrap` times.
fn bootstrap_intervals(
    config: &SimConfig,
    hist: &[u64],
    level: f64,
) -> [[f64; 2]; 5] {
    // Cumulative counts for inverse sampling of the empirical distribution.
    let mut cumulative = Vec::with_capacity(hist.len());
    let mut acc = 0u64;
    for &c in hist {
        acc += c;
        cumulative.push(acc);
    }
    let total = acc;

    let replicates: Vec<[f64; 5]> = (0..config.bootstrap as u64)
        .into_par_iter()
        .map(|b| {
            let mut rng = Xoshiro256::substream(config.seed, BOOTSTRAP_BASE + b);
            let mut resampled = vec![0u64; hist.len()];
            for _ in 0..config.samples {
                let target = rng.next_u64() % total;
                let cell = cumulative.partition_point(|&c| c <= target);
                resampled[cell] += 1;
            }
            cumulants_from_raw_moments(&moments_of_histogram(&resampled, config.samples))
        })
        .collect();

    let alpha = 1.0 - level;
    let b = replicates.len();
    let lo_idx = ((alpha / 2.0) * b as f64) as usize;
    let hi_idx = (((1.0 - alpha / 2.0) * b as f64) as usize).min(b - 1);
    let mut out = [[0.0; 2]; 5];
    for (t, interval) in out.iter_mut().enumerate() {
        let mut column: Vec<f64> = replicates.iter().map(|r| r[t]).collect();
        column.sort_by(f64::total_cmp);
        *interval = [sig12(column[lo_idx]), sig12(column[hi_idx])];
    }
    out
}

/// Runs the full simulation: draws `samples` outcomes in deterministic
/// seeded chunks, estimates moments and cumulants, bootstraps confidence
/// intervals, and attaches exact and limit references.
pub fn simulate(config: &SimConfig) -> Result<SimReport, ConfigError> {
    config.validate()?;
    let q = config.q();

    let hist = histogram(config);
    let moments = moments_of_histogram(&hist, config.samples);
    let cumulants = cumulants_from_raw_moments(&moments);
    let ci_level = 0.99;
    let cumulant_ci = bootstrap_intervals(config, &hist, ci_level);

    let exact = cumulants_exact(config.n as usize, 5).expect("validated config");
    let mut exact_cumulants = [0.0; 5];
    for t in 1..=5 {
        exact_cumulants[t - 1] = sig12(exact.kappa(t).eval_f64(q));
    }

    let limit = limit_cumulants(5, LIMIT_REFERENCE_ORDER).expect("tmax = 5");
    let mut limit_refs = [0.0; 5];
    for (t, series) in limit.iter().enumerate() {
        limit_refs[t] = sig12(series.eval_f64(q));
    }

    Ok(SimReport {
        config: config.clone(),
        moments: moments.map(sig12),
        cumulants: cumulants.map(sig12),
        cumulant_ci,
        ci_level,
        exact_cumulants,
        limit_cumulants: limit_refs,
        limit_order: LIMIT_REFERENCE_ORDER,
    })
}

/// Goodness-of-fit verdict of one sampling method against the exact pmf.
#[derive(Debug, Clone, Serialize)]
pub struct GofReport {
    pub method: SampleMethod,
    pub n: u32,
    pub p: f64,
    pub samples: u64,
    pub seed: u64,
    pub test: ChiSquareTest,
}

/// Draws `samples` outcomes with `config` and chi-square-tests the counts
/// against the exact distribution evaluated at `q`.
pub fn goodness_of_fit(config: &SimConfig) -> Result<GofReport, ConfigError> {
    config.validate()?;
    let hist = histogram(config);
    let probs = pmf_exact(config.n as usize)
        .expect("validated config")
        .eval_f64(config.q());
    Ok(GofReport {
        method: config.method,
        n: config.n,
        p: config.p,
        samples: config.samples,
        seed: config.seed,
        test: chi_square_gof(&hist, &probs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let good = SimConfig::new(5, 0.5, 100, 1, SampleMethod::PureBirth);
        assert!(good.validate().is_ok());
        assert_eq!(
            SimConfig::new(0, 0.5, 1, 1, SampleMethod::PureBirth).validate(),
            Err(ConfigError::ZeroVertices)
        );
        assert_eq!(
            SimConfig::new(2, 1.0, 1, 1, SampleMethod::PureBirth).validate(),
            Err(ConfigError::ProbabilityOutOfRange)
        );
        assert_eq!(
            SimConfig::new(2, 0.5, 0, 1, SampleMethod::PureBirth).validate(),
            Err(ConfigError::ZeroSamples)
        );
    }

    #[test]
    fn single_vertex_is_deterministic() {
        let config = SimConfig::new(1, 0.3, 500, 9, SampleMethod::DirectGraph);
        let report = simulate(&config).unwrap();
        assert_eq!(report.cumulants[0], 1.0);
        assert_eq!(report.cumulants[1], 0.0);
        assert_eq!(report.exact_cumulants[0], 1.0);
    }

    #[test]
    fn two_vertex_outcome_frequency() {
        // Pr(h = 2) = p for n = 2; check the empirical rate coarsely.
        let config = SimConfig::new(2, 0.37, 40_000, 11, SampleMethod::DirectGraph);
        let hist = histogram(&config);
        let rate = hist[1] as f64 / config.samples as f64;
        assert!((rate - 0.37).abs() < 0.01, "rate {rate}");
    }

    #[test]
    fn methods_agree_in_mean() {
        for method in [
            SampleMethod::DirectGraph,
            SampleMethod::PureBirth,
            SampleMethod::InverseCdf,
        ] {
            let config = SimConfig::new(8, 0.5, 30_000, 123, method);
            let report = simulate(&config).unwrap();
            let exact = report.exact_cumulants[0];
            assert!(
                (report.cumulants[0] - exact).abs() < 0.05,
                "{method:?}: {} vs {exact}",
                report.cumulants[0]
            );
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let config = SimConfig::new(6, 0.4, 10_000, 77, SampleMethod::PureBirth);
        let a = serde_json::to_string(&simulate(&config).unwrap()).unwrap();
        let b = serde_json::to_string(&simulate(&config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn near_certain_edges_reach_everything() {
        let config = SimConfig::new(7, 0.999, 2_000, 5, SampleMethod::DirectGraph);
        let hist = histogram(&config);
        // Almost every draw reaches all 7 vertices.
        assert!(hist[6] as f64 / 2_000.0 > 0.98);
    }

    #[test]
    fn goodness_of_fit_passes_for_all_methods() {
        for method in [
            SampleMethod::DirectGraph,
            SampleMethod::PureBirth,
            SampleMethod::InverseCdf,
        ] {
            let config = SimConfig::new(6, 0.5, 20_000, 2024, method);
            let report = goodness_of_fit(&config).unwrap();
            assert!(
                report.test.p_value > 1e-3,
                "{method:?}: p = {}",
                report.test.p_value
            );
        }
    }

    #[test]
    fn sig12_rounds() {
        assert_eq!(sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(-2.5), -2.5);
    }
}
