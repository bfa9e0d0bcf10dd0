//! Command-line front end.
//!
//! Exit codes: 0 success (including nonexistence verdicts), 1 a `verify` check
//! failed, 2 invalid arguments, 3 inconclusive certificate, 4 an effort budget
//! ran out.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::certifier::{self, Certificate, CertifyConfig, CertifyError, Verdict};
use crate::mahonian::{self, MahonianError, SphereTable, DEFAULT_TABLE_CAP, MAX_CLOSED_FORM_RADIUS};
use crate::numtheory::{self, FactorConfig, DEFAULT_RHO_BUDGET};
use crate::oracle::{self, SearchOutcome, MAX_CENSUS_N, MAX_HISTOGRAM_N, MAX_SEARCH_N};
use crate::perm::Permutation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Records,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(
    name = "kendall-perfect",
    version,
    about = "Kendall tau sphere and ball sizes, and sphere-packing certificates for perfect permutation codes"
)]
pub struct CliConfig {
    /// Output format for certify and scan.
    #[arg(long, global = true, value_enum, default_value_t = Format::Records)]
    pub format: Format,
    /// Worker threads for scan.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub jobs: u64,
    /// Pollard rho iterations allowed per factorization.
    #[arg(long, global = true, default_value_t = DEFAULT_RHO_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub factor_budget: u64,
    /// Node budget for the exhaustive code search in verify.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: u64,
    /// Largest n for which a sphere table is built.
    #[arg(long, global = true, default_value_t = DEFAULT_TABLE_CAP as u64, value_parser = clap::value_parser!(u64).range(2..=DEFAULT_TABLE_CAP as u64))]
    pub table_cap: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sphere size S(n, i).
    Sphere {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
    },
    /// Ball size B(n, r).
    Ball {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Sphere-packing certificate for (n, t).
    Certify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
    },
    /// Certificates for every n in from..=to.
    Scan {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// TSV of sphere and ball sizes for 2 <= n <= max-n.
    Table {
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        max_r: Option<u64>,
    },
    /// Compare enumeration oracles against the formulas for one n.
    Verify {
        #[arg(long)]
        n: u64,
    },
}

/// Parses the process arguments and runs; returns the exit code.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs with explicit arguments (including the program name) and sinks.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_BUDGET
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Usage(String),
    Budget(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<MahonianError> for Failure {
    fn from(e: MahonianError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CertifyError> for Failure {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::NumTheory(numtheory::NumTheoryError::BudgetExhausted { .. }) => {
                Failure::Budget(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn certify_config(c: &CliConfig) -> CertifyConfig {
    CertifyConfig {
        factor: FactorConfig {
            rho_budget: c.factor_budget,
            ..FactorConfig::default()
        },
        table_cap: c.table_cap as usize,
        ..CertifyConfig::default()
    }
}

fn execute(c: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let cap = c.table_cap as usize;
    match c.command {
        Command::Sphere { n, i } => {
            writeln!(out, "{}", sphere(n, i, cap)?)?;
            Ok(EXIT_OK)
        }
        Command::Ball { n, r } => {
            let value = certifier::ball_size_for(n, r.min(max_distance_u64(n)), &certify_config(c))?;
            writeln!(out, "{value}")?;
            Ok(EXIT_OK)
        }
        Command::Certify { n, t } => {
            let cert = certifier::certify_with(n, t, &certify_config(c))?;
            write_certificates(c.format, std::slice::from_ref(&cert).iter().map(Ok), out)?;
            Ok(if cert.degraded {
                EXIT_BUDGET
            } else if cert.verdict == Verdict::Inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            })
        }
        Command::Scan { t, from, to } => {
            let jobs = c.jobs as usize;
            let results = certifier::scan_with(t, from, to, &certify_config(c), jobs)?;
            write_certificates(
                c.format,
                results.iter().zip(from..).map(|(r, n)| r.as_ref().map_err(|e| (n, e))),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Table { max_n, max_r } => {
            if max_n < 2 || max_n as usize > cap {
                return Err(usage(format!("--max-n must be in 2..={cap}, got {max_n}")));
            }
            let max_n = max_n as usize;
            let columns = max_r.map(|r| r.min(mahonian::max_distance(max_n) as u64) as usize);
            let table = SphereTable::build_with_cap(max_n, columns, cap)?;
            table.write_tsv(out, columns)?;
            Ok(EXIT_OK)
        }
        Command::Verify { n } => verify(n, c.search_budget, out),
    }
}

fn max_distance_u64(n: u64) -> u64 {
    n.saturating_mul(n.saturating_sub(1)) / 2
}

fn sphere(n: u64, i: i64, cap: usize) -> Result<BigUint, Failure> {
    if n < 2 {
        return Err(usage(format!("n must be at least 2, got {n}")));
    }
    let top = max_distance_u64(n);
    if i < 0 || i as u64 > top {
        return Ok(BigUint::default());
    }
    let i = i as u64;
    if n as usize <= cap {
        let nu = n as usize;
        let table = SphereTable::build_with_cap(nu, Some(i.min(top - i) as usize), cap)?;
        return Ok(table.sphere_size(nu, i as i64)?);
    }
    let near = i.min(top - i);
    if near <= MAX_CLOSED_FORM_RADIUS as u64 {
        return Ok(mahonian::sphere_closed_form(n, near as usize)?);
    }
    Err(usage(format!(
        "n = {n} exceeds the table cap {cap} and i = {i} has no closed form"
    )))
}

type Entry<'a> = Result<&'a Certificate, (u64, &'a CertifyError)>;

fn write_certificates<'a>(
    format: Format,
    entries: impl Iterator<Item = Entry<'a>>,
    out: &mut dyn Write,
) -> io::Result<()> {
    if format == Format::Tsv {
        writeln!(out, "{}", Certificate::tsv_header())?;
    }
    for entry in entries {
        match (format, entry) {
            (Format::Tsv, Ok(c)) => writeln!(out, "{}", c.to_tsv_row())?,
            (Format::Records, Ok(c)) => writeln!(out, "{}", c.to_record())?,
            (Format::Pretty, Ok(c)) => writeln!(out, "{}", c.pretty())?,
            (Format::Pretty, Err((n, e))) => writeln!(out, "n={n}: error: {e}")?,
            (_, Err((n, e))) => writeln!(out, "n={n}\terror={e}")?,
        }
    }
    Ok(())
}

fn verify(n: u64, search_budget: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(2..=MAX_HISTOGRAM_N as u64).contains(&n) {
        return Err(usage(format!("verify needs 2 <= n <= {MAX_HISTOGRAM_N}, got {n}")));
    }
    let n = n as usize;
    let table = SphereTable::build(n)?;
    let mut failures = 0usize;
    let mut report = |out: &mut dyn Write, ok: bool, what: String| -> io::Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {what}", if ok { "PASS" } else { "FAIL" })
    };

    let hist = oracle::inversion_histogram(n).map_err(|e| usage(e.to_string()))?;
    let row = table.sphere_row(n)?;
    let matches = hist.counts.len() == row.len() && hist.counts.iter().zip(&row).all(|(a, b)| BigUint::from(*a) == *b);
    report(
        out,
        matches,
        format!("inversion histogram of S_{n} matches the sphere row"),
    )?;
    let order = numtheory::factorial(n as u64).expect("small n");
    report(
        out,
        BigUint::from(hist.total()) == order,
        format!("histogram total is {n}!"),
    )?;

    if n <= MAX_CENSUS_N {
        let top = mahonian::max_distance(n) as u64;
        let identity = Permutation::identity(n).expect("n is valid");
        let centers = [identity.clone(), identity.reverse()];
        let mut ok = true;
        for r in 0..=top {
            let ball = table.ball_size(n, r)?.value;
            for center in &centers {
                ok &= oracle::ball_census(n, r, center).map_err(|e| usage(e.to_string()))? == ball;
            }
        }
        report(
            out,
            ok,
            format!("ball census matches B({n}, r) for all r at two centers"),
        )?;
        let mut ok = true;
        for r in 0..=(MAX_CLOSED_FORM_RADIUS as u64).min(top) {
            if let Some(min_n) = mahonian::ball_closed_form_min_n(r as usize) {
                if n as u64 >= min_n {
                    ok &= mahonian::ball_closed_form(n as u64, r as usize)? == table.ball_size(n, r)?.value;
                }
            }
        }
        report(out, ok, format!("closed-form balls match the table for n = {n}"))?;
    }

    if n <= MAX_SEARCH_N {
        let res = oracle::search_perfect_code(n, 1, search_budget).map_err(|e| usage(e.to_string()))?;
        let outcome = match &res.outcome {
            SearchOutcome::Found(code) => format!("FOUND ({} codewords)", code.len()),
            SearchOutcome::ExhaustedNone => "EXHAUSTED_NONE".to_string(),
            SearchOutcome::AbortedBudget => "ABORTED_BUDGET".to_string(),
        };
        writeln!(
            out,
            "INFO perfect 1-error-correcting code search in S_{n}: {outcome}, {} nodes",
            res.nodes_explored
        )?;
    }

    if failures == 0 {
        writeln!(out, "PASS verify n={n}")?;
        Ok(EXIT_OK)
    } else {
        writeln!(out, "FAIL verify n={n}: {failures} check(s) failed")?;
        Ok(EXIT_VERIFY_FAILED)
    }
}
