//! Rendering of reports and tables in the three output formats. CSV fields
//! that could contain commas (parameter maps, coefficient lists) use `;` as
//! the inner separator.

use serde::Serialize;

use qdiv_core::combinatorics::{bernoulli, eulerian_poly};
use qdiv_core::dag::sim::SimReport;
use qdiv_core::dag::PmfExact;
use qdiv_core::identities::IdentityReport;
use qdiv_core::series::{format_rational, QSeries};

use crate::Format;

pub fn series_text(series: &QSeries) {
    for (m, c) in series.coeffs().iter().enumerate() {
        println!("q^{m}\t{}", format_rational(c));
    }
}

pub fn series_csv(series: &QSeries) {
    println!("exponent,coefficient");
    for (m, c) in series.coeffs().iter().enumerate() {
        println!("{m},{}", format_rational(c));
    }
}

fn coeff_list(series: &QSeries) -> String {
    series
        .coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn reports_csv(reports: &[IdentityReport]) {
    println!("identity_id,params,order,verdict,mismatch_exponent,mismatch_lhs,mismatch_rhs");
    for r in reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let verdict = if r.passed() { "pass" } else { "fail" };
        match &r.first_mismatch {
            Some(m) => println!(
                "{},{},{},{},{},{},{}",
                r.identity_id, params, r.order, verdict, m.exponent, m.lhs, m.rhs
            ),
            None => println!("{},{},{},{},,,", r.identity_id, params, r.order, verdict),
        }
    }
}

/// One row of the cumulant-limit table: the stabilized limit of the t-th
/// defect cumulant next to the divisor series it must equal, plus the sign
/// `(-1)^t` that maps it back to the reachable-set cumulant.
#[derive(Serialize)]
pub struct CumulantRow {
    pub t: usize,
    pub sign: i8,
    pub matches: bool,
    pub limit_cumulant: QSeries,
    pub divisor_series: QSeries,
}

pub fn cumulants_text(rows: &[CumulantRow], order: usize) {
    for row in rows {
        println!(
            "t={} sign={:+} {} limit = {}",
            row.t,
            row.sign,
            if row.matches { "PASS" } else { "FAIL" },
            row.limit_cumulant
        );
    }
    let passed = rows.iter().filter(|r| r.matches).count();
    println!("{}/{} cumulant limits match at order {order}", passed, rows.len());
}

pub fn cumulants_csv(rows: &[CumulantRow]) {
    println!("t,sign,matches,limit_coefficients,divisor_coefficients");
    for row in rows {
        println!(
            "{},{},{},{},{}",
            row.t,
            row.sign,
            row.matches,
            coeff_list(&row.limit_cumulant),
            coeff_list(&row.divisor_series)
        );
    }
}

pub fn sim_text(report: &SimReport) {
    let c = &report.config;
    println!(
        "n={} p={} samples={} seed={} method={} bootstrap={}",
        c.n,
        c.p,
        c.samples,
        c.seed,
        c.method.name(),
        c.bootstrap
    );
    println!("t  cumulant        ci{}%                        exact          limit(K_t)", (report.ci_level * 100.0) as u32);
    for t in 1..=5 {
        println!(
            "{}  {:<14} [{}, {}]  {:<14} {}",
            t,
            report.cumulants[t - 1],
            report.cumulant_ci[t - 1][0],
            report.cumulant_ci[t - 1][1],
            report.exact_cumulants[t - 1],
            report.limit_cumulants[t - 1]
        );
    }
}

pub fn sim_csv(report: &SimReport) {
    let mut header = vec![
        "n".to_string(),
        "p".to_string(),
        "samples".to_string(),
        "seed".to_string(),
        "method".to_string(),
        "bootstrap".to_string(),
        "ci_level".to_string(),
        "limit_order".to_string(),
    ];
    let c = &report.config;
    let mut row = vec![
        c.n.to_string(),
        c.p.to_string(),
        c.samples.to_string(),
        c.seed.to_string(),
        c.method.name().to_string(),
        c.bootstrap.to_string(),
        report.ci_level.to_string(),
        report.limit_order.to_string(),
    ];
    for t in 1..=5 {
        header.push(format!("moment_{t}"));
        row.push(report.moments[t - 1].to_string());
    }
    for t in 1..=5 {
        header.push(format!("kappa_{t}"));
        header.push(format!("kappa_{t}_ci_low"));
        header.push(format!("kappa_{t}_ci_high"));
        header.push(format!("kappa_{t}_exact"));
        header.push(format!("kappa_{t}_limit"));
        row.push(report.cumulants[t - 1].to_string());
        row.push(report.cumulant_ci[t - 1][0].to_string());
        row.push(report.cumulant_ci[t - 1][1].to_string());
        row.push(report.exact_cumulants[t - 1].to_string());
        row.push(report.limit_cumulants[t - 1].to_string());
    }
    println!("{}", header.join(","));
    println!("{}", row.join(","));
}

pub fn k_table(rows: &[(usize, QSeries)], format: Format) {
    match format {
        Format::Text => {
            for (m, series) in rows {
                println!("K_{m} = {series}");
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                m: usize,
                series: &'a QSeries,
            }
            let rows: Vec<Row> = rows.iter().map(|(m, s)| Row { m: *m, series: s }).collect();
            println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
        }
        Format::Csv => {
            println!("m,coefficients");
            for (m, series) in rows {
                println!("{m},{}", coeff_list(series));
            }
        }
    }
}

pub fn eulerian_table(kmax: usize, format: Format) {
    let rows: Vec<(usize, Vec<String>)> = (0..=kmax)
        .map(|k| {
            let coeffs = eulerian_poly(k)
                .coeffs()
                .iter()
                .map(format_rational)
                .collect();
            (k, coeffs)
        })
        .collect();
    match format {
        Format::Text => {
            for (k, coeffs) in &rows {
                println!("A_{k}: {}", coeffs.join(", "));
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                k: usize,
                coeffs: &'a [String],
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|(k, c)| Row {
                    k: *k,
                    coeffs: c.as_slice(),
                })
                .collect();
            println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
        }
        Format::Csv => {
            println!("k,coefficients");
            for (k, coeffs) in &rows {
                println!("{k},{}", coeffs.join(";"));
            }
        }
    }
}

pub fn bernoulli_table(jmax: usize, format: Format) {
    let rows: Vec<(usize, String)> = (0..=jmax)
        .map(|j| (j, format_rational(&bernoulli(j))))
        .collect();
    match format {
        Format::Text => {
            for (j, value) in &rows {
                println!("B_{j} = {value}");
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                j: usize,
                value: &'a str,
            }
            let rows: Vec<Row> = rows
                .iter()
                .map(|(j, v)| Row { j: *j, value: v })
                .collect();
            println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
        }
        Format::Csv => {
            println!("j,value");
            for (j, value) in &rows {
                println!("{j},{value}");
            }
        }
    }
}

pub fn pmf_table(pmf: &PmfExact, format: Format) {
    let rows: Vec<(usize, Vec<String>)> = pmf
        .probs()
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let coeffs = p.coeffs().iter().map(format_rational).collect();
            (idx + 1, coeffs)
        })
        .collect();
    match format {
        Format::Text => {
            for (h, _) in &rows {
                println!("Pr(X_{} = {h}) = {}", pmf.n(), pmf.prob(*h).render("q"));
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                n: usize,
                probs: Vec<&'a [String]>,
            }
            let out = Out {
                n: pmf.n(),
                probs: rows.iter().map(|(_, c)| c.as_slice()).collect(),
            };
            println!("{}", serde_json::to_string(&out).expect("table serializes"));
        }
        Format::Csv => {
            println!("h,coefficients");
            for (h, coeffs) in &rows {
                println!("{h},{}", coeffs.join(";"));
            }
        }
    }
}
