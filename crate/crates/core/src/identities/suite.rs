//! The verification suite: enumerates every identity check across the
//! requested parameter ranges, evaluates independent checks in parallel,
//! and reports results in a deterministic order fixed by the enumeration
//! (never by scheduling).
//!
//! Fault injection: a [`FaultInjection`] names one check by its report key
//! and perturbs a single left-side coefficient just before comparison. The
//! test harness uses this to prove the checker can fail and that it points
//! at the perturbed exponent.

use rayon::prelude::*;

use super::report::{format_key, IdentityReport};
use super::{
    dilcher_lhs, dilcher_nested, dilcher_ramanujan, divisor_series, lambert_series, limit_series,
    mgf_closed_form, normalization_series, power_sum_ramanujan, power_sum_weighted,
    ramanujan_side, reach_mgf, uchimura_weighted, RecurrenceSpec,
};
use crate::series::{rat, BiSeries, QSeries, Rational};

/// Parameter ranges driving the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteParams {
    /// Truncation order for every series comparison.
    pub order: usize,
    /// Eulerian/binomial depth bound (Ramanujan-type, cumulative power sums,
    /// binomial-weighted forms, limit presets).
    pub kmax: usize,
    /// Moment index bound (Lambert and Bell checks).
    pub mmax: usize,
    /// z-degree bound for the bivariate generating-function checks.
    pub tmax: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            order: 50,
            kmax: 4,
            mmax: 4,
            tmax: 4,
        }
    }
}

/// Perturbation of one check: adds `delta * q^exponent` to the left side of
/// the check whose report key equals `target` (e.g. `"ramanujan_type[k=2]"`).
#[derive(Debug, Clone)]
pub struct FaultInjection {
    pub target: String,
    pub exponent: usize,
    pub delta: Rational,
}

#[derive(Debug, Clone, Copy)]
enum Check {
    Normalization,
    KluyverUchimura,
    KluyverRamanujan,
    RamanujanType { k: usize },
    PowerSumIdentity { k: usize },
    DilcherRamanujan { k: usize },
    DilcherNested { k: usize },
    LambertDivisor { m: usize },
    MomentBell { m: usize },
    LimitConstant,
    LimitPower { k: usize },
    LimitBinomial { k: usize },
    CumulantLog { t: usize },
    MgfProductForm { t: usize },
    DivisorLogProduct { t: usize },
}

impl Check {
    fn id_and_params(&self) -> (&'static str, Vec<(&'static str, i64)>) {
        match *self {
            Check::Normalization => ("normalization", vec![]),
            Check::KluyverUchimura => ("kluyver_uchimura", vec![]),
            Check::KluyverRamanujan => ("kluyver_ramanujan", vec![]),
            Check::RamanujanType { k } => ("ramanujan_type", vec![("k", k as i64)]),
            Check::PowerSumIdentity { k } => ("power_sum_identity", vec![("k", k as i64)]),
            Check::DilcherRamanujan { k } => ("dilcher_ramanujan", vec![("k", k as i64)]),
            Check::DilcherNested { k } => ("dilcher_nested", vec![("k", k as i64)]),
            Check::LambertDivisor { m } => ("lambert_divisor", vec![("m", m as i64)]),
            Check::MomentBell { m } => ("moment_bell", vec![("m", m as i64)]),
            Check::LimitConstant => ("limit_constant", vec![]),
            Check::LimitPower { k } => ("limit_power", vec![("k", k as i64)]),
            Check::LimitBinomial { k } => ("limit_binomial", vec![("k", k as i64)]),
            Check::CumulantLog { t } => ("cumulant_log", vec![("t", t as i64)]),
            Check::MgfProductForm { t } => ("mgf_product_form", vec![("t", t as i64)]),
            Check::DivisorLogProduct { t } => ("divisor_log_product", vec![("t", t as i64)]),
        }
    }

    /// Computes both sides of the comparison.
    fn compute(&self, order: usize, ctx: &BivariateContext) -> (QSeries, QSeries) {
        match *self {
            Check::Normalization => (normalization_series(order), QSeries::one(order)),
            Check::KluyverUchimura => (
                uchimura_weighted(1, order),
                divisor_series(1, order).expect("m = 1"),
            ),
            Check::KluyverRamanujan => (
                ramanujan_side(1, order),
                divisor_series(1, order).expect("m = 1"),
            ),
            Check::RamanujanType { k } => {
                (uchimura_weighted(k, order), ramanujan_side(k, order))
            }
            Check::PowerSumIdentity { k } => {
                (power_sum_weighted(k, order), power_sum_ramanujan(k, order))
            }
            Check::DilcherRamanujan { k } => (
                dilcher_lhs(k, order).expect("k >= 1"),
                dilcher_ramanujan(k, order).expect("k >= 1"),
            ),
            Check::DilcherNested { k } => (
                dilcher_lhs(k, order).expect("k >= 1"),
                dilcher_nested(k, order).expect("k >= 1"),
            ),
            Check::LambertDivisor { m } => (
                lambert_series(m, order),
                divisor_series(m + 1, order).expect("m + 1 >= 1"),
            ),
            Check::MomentBell { m } => {
                let lhs = uchimura_weighted(m, order);
                let inputs: Vec<QSeries> = (1..=m)
                    .map(|i| divisor_series(i, order).expect("i >= 1"))
                    .collect();
                let rhs = crate::combinatorics::bell_complete(m, &inputs).expect("arity matches");
                (lhs, rhs)
            }
            Check::LimitConstant => (
                limit_series(&RecurrenceSpec::constant_one(), order),
                divisor_series(1, order).expect("m = 1"),
            ),
            Check::LimitPower { k } => (
                limit_series(&RecurrenceSpec::power_sum(k).expect("k >= 1"), order),
                uchimura_weighted(k, order),
            ),
            Check::LimitBinomial { k } => (
                limit_series(&RecurrenceSpec::binomial_column(k).expect("k >= 1"), order),
                dilcher_lhs(k, order).expect("k >= 1"),
            ),
            Check::CumulantLog { t } => {
                let mut factorial = Rational::from_integer(1.into());
                for i in 1..=t {
                    factorial *= rat(i as i64);
                }
                (
                    ctx.log_mgf().zcoeff(t).scale(&factorial),
                    divisor_series(t, order).expect("t >= 1"),
                )
            }
            Check::MgfProductForm { t } => (
                ctx.mgf().zcoeff(t).clone(),
                ctx.closed().zcoeff(t).clone(),
            ),
            Check::DivisorLogProduct { t } => {
                let mut factorial = Rational::from_integer(1.into());
                for i in 1..=t {
                    factorial *= rat(i as i64);
                }
                let inv_factorial = Rational::from_integer(1.into()) / factorial;
                (
                    divisor_series(t, order)
                        .expect("t >= 1")
                        .scale(&inv_factorial),
                    ctx.log_closed().zcoeff(t).clone(),
                )
            }
        }
    }
}

/// The bivariate artifacts are shared across the per-degree checks, so they
/// are computed once up front instead of per check.
struct BivariateContext {
    mgf: BiSeries,
    log_mgf: BiSeries,
    closed: BiSeries,
    log_closed: BiSeries,
}

impl BivariateContext {
    fn build(zorder: usize, qorder: usize) -> Self {
        let mgf = reach_mgf(zorder, qorder);
        let log_mgf = mgf.log().expect("z^0 coefficient is exactly 1");
        let closed = mgf_closed_form(zorder, qorder);
        let log_closed = closed.log().expect("z^0 coefficient is exactly 1");
        BivariateContext {
            mgf,
            log_mgf,
            closed,
            log_closed,
        }
    }

    fn mgf(&self) -> &BiSeries {
        &self.mgf
    }
    fn log_mgf(&self) -> &BiSeries {
        &self.log_mgf
    }
    fn closed(&self) -> &BiSeries {
        &self.closed
    }
    fn log_closed(&self) -> &BiSeries {
        &self.log_closed
    }
}

fn enumerate_checks(params: &SuiteParams) -> Vec<Check> {
    let mut checks = vec![
        Check::Normalization,
        Check::KluyverUchimura,
        Check::KluyverRamanujan,
    ];
    for k in 0..=params.kmax {
        checks.push(Check::RamanujanType { k });
    }
    for k in 0..=params.kmax {
        checks.push(Check::PowerSumIdentity { k });
    }
    for k in 1..=params.kmax {
        checks.push(Check::DilcherRamanujan { k });
        checks.push(Check::DilcherNested { k });
    }
    for m in 0..=params.mmax {
        checks.push(Check::LambertDivisor { m });
    }
    for m in 1..=params.mmax {
        checks.push(Check::MomentBell { m });
    }
    checks.push(Check::LimitConstant);
    for k in 1..=params.kmax {
        checks.push(Check::LimitPower { k });
    }
    for k in 1..=params.kmax {
        checks.push(Check::LimitBinomial { k });
    }
    for t in 1..=params.tmax {
        checks.push(Check::CumulantLog { t });
    }
    for t in 0..=params.tmax {
        checks.push(Check::MgfProductForm { t });
    }
    for t in 1..=params.tmax {
        checks.push(Check::DivisorLogProduct { t });
    }
    checks
}

/// Report keys of every check the suite would run, in report order.
pub fn suite_check_keys(params: &SuiteParams) -> Vec<String> {
    enumerate_checks(params)
        .iter()
        .map(|c| {
            let (id, ps) = c.id_and_params();
            let map = ps.iter().map(|(k, v)| ((*k).to_string(), *v)).collect();
            format_key(id, &map)
        })
        .collect()
}

/// Runs the full suite. Independent checks are evaluated in parallel on the
/// current rayon pool; the report order is the enumeration order.
pub fn run_suite(params: &SuiteParams) -> Vec<IdentityReport> {
    run_suite_with(params, None)
}

/// [`run_suite`] with an optional fault injection (test harness hook).
pub fn run_suite_with(
    params: &SuiteParams,
    fault: Option<&FaultInjection>,
) -> Vec<IdentityReport> {
    let ctx = BivariateContext::build(params.tmax, params.order);
    let checks = enumerate_checks(params);
    checks
        .par_iter()
        .map(|check| {
            let (id, check_params) = check.id_and_params();
            let (mut lhs, rhs) = check.compute(params.order, &ctx);
            if let Some(fault) = fault {
                let map = check_params
                    .iter()
                    .map(|(k, v)| ((*k).to_string(), *v))
                    .collect();
                if format_key(id, &map) == fault.target {
                    lhs = &lhs
                        + &QSeries::monomial(fault.delta.clone(), fault.exponent, params.order);
                }
            }
            IdentityReport::from_comparison(id, &check_params, &lhs, &rhs)
        })
        .collect()
}
