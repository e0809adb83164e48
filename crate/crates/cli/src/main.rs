//! `qdiv`: exact verification of divisor-generating q-series identities,
//! stabilized limit and cumulant tables, and a seeded Monte Carlo simulator
//! for the reachable-set size of a random acyclic digraph.
//!
//! Exit codes: 0 on success with every performed check passing, 1 when a
//! verification check fails, 2 on usage or configuration errors.

mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qdiv_core::dag::sim::{simulate, SampleMethod, SimConfig};
use qdiv_core::dag::{limit_cumulants, pmf_exact};
use qdiv_core::identities::{
    divisor_series, limit_series, run_suite, RecurrenceSpec, SuiteParams,
};
use qdiv_core::series::{parse_rational, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "qdiv", version, about = "Exact q-series identity verification and random-DAG cumulant simulation")]
struct Cli {
    /// Worker threads for parallel sections (0 = all cores). Output never
    /// depends on this.
    #[arg(long, global = true, env = "QDIV_JOBS", default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full identity verification suite.
    Verify {
        /// Truncation order for every series comparison.
        #[arg(long, default_value_t = 50)]
        order: usize,
        /// Depth bound for Eulerian/binomial-indexed identities.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Moment index bound for Lambert/Bell identities.
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        /// z-degree bound for generating-function identities.
        #[arg(long, default_value_t = 4)]
        tmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the stabilized limit of `sum f(i) - a_n` for a forcing
    /// polynomial f.
    Limits {
        /// `const1`, `fk:<k>`, `dilcher:<k>`, or a comma-separated list of
        /// rational coefficients of f, lowest degree first.
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print cumulant limits next to the divisor series they must equal.
    Cumulants {
        #[arg(long, default_value_t = 5)]
        tmax: usize,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Monte Carlo simulation of the reachable-set size.
    Simulate {
        /// Vertex count.
        #[arg(long)]
        n: u32,
        /// Edge probability, strictly between 0 and 1.
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// direct-graph, pure-birth, or inverse-cdf.
        #[arg(long, default_value = "pure-birth")]
        method: SampleMethod,
        /// Bootstrap resample count for confidence intervals.
        #[arg(long, default_value_t = 1000)]
        bootstrap: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Dump exact tables.
    Tables {
        #[arg(long, value_enum)]
        what: Table,
        /// Comma-separated key=value parameters, e.g. `n=3` or
        /// `mmax=4,order=12`.
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    /// Divisor generating functions `K_m`.
    #[value(alias = "K")]
    K,
    /// Eulerian polynomial coefficient rows.
    Eulerian,
    /// Bernoulli numbers.
    Bernoulli,
    /// Exact outcome distribution of the reachable-set size.
    Pmf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(err) => {
            eprintln!("error: could not build thread pool: {err}");
            return ExitCode::from(2);
        }
    };
    let code = pool.install(|| run(cli.command));
    ExitCode::from(code)
}

fn run(command: Command) -> u8 {
    match command {
        Command::Verify {
            order,
            kmax,
            mmax,
            tmax,
            format,
        } => cmd_verify(
            SuiteParams {
                order,
                kmax,
                mmax,
                tmax,
            },
            format,
        ),
        Command::Limits { f, order, format } => cmd_limits(&f, order, format),
        Command::Cumulants {
            tmax,
            order,
            format,
        } => cmd_cumulants(tmax, order, format),
        Command::Simulate {
            n,
            p,
            samples,
            seed,
            method,
            bootstrap,
            format,
        } => cmd_simulate(
            SimConfig {
                n,
                p,
                samples,
                seed,
                method,
                bootstrap,
            },
            format,
        ),
        Command::Tables {
            what,
            params,
            format,
        } => cmd_tables(what, &params, format),
    }
}

fn cmd_verify(params: SuiteParams, format: Format) -> u8 {
    let reports = run_suite(&params);
    let all_pass = reports.iter().all(|r| r.passed());
    match format {
        Format::Text => {
            for report in &reports {
                println!("{report}");
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            println!(
                "{}/{} checks passed at order {}",
                passed,
                reports.len(),
                params.order
            );
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string(&reports).expect("reports serialize")
        ),
        Format::Csv => output::reports_csv(&reports),
    }
    u8::from(!all_pass)
}

fn parse_forcing(text: &str) -> Result<RecurrenceSpec, String> {
    if text == "const1" {
        return Ok(RecurrenceSpec::constant_one());
    }
    if let Some(k) = text.strip_prefix("fk:") {
        let k: usize = k
            .parse()
            .map_err(|_| format!("invalid preset parameter in {text:?}"))?;
        // The k = 0 preset is the constant forcing f = 1 (its partial sums
        // are n, the same telescoping target as fk:1).
        if k == 0 {
            return Ok(RecurrenceSpec::constant_one());
        }
        return RecurrenceSpec::power_sum(k).map_err(|e| e.to_string());
    }
    if let Some(k) = text.strip_prefix("dilcher:") {
        let k: usize = k
            .parse()
            .map_err(|_| format!("invalid preset parameter in {text:?}"))?;
        return RecurrenceSpec::binomial_column(k).map_err(|e| e.to_string());
    }
    let coeffs = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    RecurrenceSpec::new(Polynomial::new(coeffs), format!("f with coefficients {text}"))
        .map_err(|e| e.to_string())
}

fn cmd_limits(f: &str, order: usize, format: Format) -> u8 {
    let spec = match parse_forcing(f) {
        Ok(spec) => spec,
        Err(err) => {
            eprintln!("error: {err}");
            return 2;
        }
    };
    let series = limit_series(&spec, order);
    match format {
        Format::Text => {
            println!("limit of sum f(i) - a_n for {}:", spec.description());
            output::series_text(&series);
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string(&series).expect("series serializes")
        ),
        Format::Csv => output::series_csv(&series),
    }
    0
}

fn cmd_cumulants(tmax: usize, order: usize, format: Format) -> u8 {
    if tmax == 0 {
        eprintln!("error: tmax must be at least 1");
        return 2;
    }
    let limits = limit_cumulants(tmax, order).expect("tmax >= 1");
    let rows: Vec<output::CumulantRow> = limits
        .into_iter()
        .enumerate()
        .map(|(idx, limit)| {
            let t = idx + 1;
            let divisor = divisor_series(t, order).expect("t >= 1");
            output::CumulantRow {
                t,
                sign: if t % 2 == 0 { 1 } else { -1 },
                matches: limit == divisor,
                limit_cumulant: limit,
                divisor_series: divisor,
            }
        })
        .collect();
    let all_match = rows.iter().all(|r| r.matches);
    match format {
        Format::Text => output::cumulants_text(&rows, order),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&rows).expect("rows serialize")
        ),
        Format::Csv => output::cumulants_csv(&rows),
    }
    u8::from(!all_match)
}

fn cmd_simulate(config: SimConfig, format: Format) -> u8 {
    let report = match simulate(&config) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("error: {err}");
            return 2;
        }
    };
    match format {
        Format::Text => output::sim_text(&report),
        Format::Json => println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        ),
        Format::Csv => output::sim_csv(&report),
    }
    0
}

fn parse_params(text: &str) -> Result<std::collections::BTreeMap<String, usize>, String> {
    let mut map = std::collections::BTreeMap::new();
    for piece in text.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {piece:?}"))?;
        let value: usize = value
            .parse()
            .map_err(|_| format!("invalid value for {key:?}: {value:?}"))?;
        map.insert(key.trim().to_string(), value);
    }
    Ok(map)
}

fn cmd_tables(what: Table, params: &str, format: Format) -> u8 {
    let params = match parse_params(params) {
        Ok(map) => map,
        Err(err) => {
            eprintln!("error: {err}");
            return 2;
        }
    };
    let get = |key: &str, default: usize| params.get(key).copied().unwrap_or(default);
    match what {
        Table::K => {
            let mmax = get("mmax", 4).max(1);
            let order = get("order", 20);
            let rows: Vec<(usize, qdiv_core::QSeries)> = (1..=mmax)
                .map(|m| (m, divisor_series(m, order).expect("m >= 1")))
                .collect();
            output::k_table(&rows, format);
        }
        Table::Eulerian => {
            let kmax = get("kmax", 4);
            output::eulerian_table(kmax, format);
        }
        Table::Bernoulli => {
            let jmax = get("jmax", 10);
            output::bernoulli_table(jmax, format);
        }
        Table::Pmf => {
            let Some(&n) = params.get("n") else {
                eprintln!("error: the pmf table needs a vertex count, e.g. --params n=3");
                return 2;
            };
            if n == 0 {
                eprintln!("error: the vertex count must be at least 1");
                return 2;
            }
            let pmf = pmf_exact(n).expect("n >= 1");
            output::pmf_table(&pmf, format);
        }
    }
    0
}
