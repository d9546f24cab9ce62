//! `clf` — exact verification of the Catalan-Larcombe-French congruence
//! family and the identities behind it.
//!
//! Exit codes: 0 when everything asked for passed, 1 when any check or
//! identity failed, 2 for usage and configuration errors.

mod cache_file;
mod report;
mod runner;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clf_core::arith::{is_prime, Integer};
use clf_core::congruence::checks::{find, registry};
use clf_core::congruence::CongruenceCheck;
use clf_core::identity::run_identities;
use clf_core::sequences::{primes_up_to, zagier_s, SequenceCache};

use report::{Format, IdentityRow, SequenceRow, VerifyRow};

#[derive(Parser)]
#[command(
    name = "clf",
    version,
    about = "Exact congruence and identity verification for the Catalan-Larcombe-French family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify registered congruence checks over a range of primes.
    Verify(VerifyArgs),
    /// Check every exact identity pointwise up to a bound.
    Identities(IdentityArgs),
    /// Print exact values of a named sequence.
    Sequence(SequenceArgs),
    /// Precompute Bernoulli and Euler tables into a cache file.
    CacheWrite(CacheWriteArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check ids, or "all".
    #[arg(long, default_value = "all")]
    checks: String,
    /// Inclusive prime bound, or an explicit comma-separated list of primes.
    #[arg(long, default_value = "100")]
    primes: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bernoulli/Euler table cache file, validated before use.
    #[arg(long, env = "CLF_CACHE")]
    cache: Option<PathBuf>,
    /// Worker threads for the sweep.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
}

#[derive(Args)]
struct IdentityArgs {
    /// Pointwise bound for every identity family (the two-parameter
    /// hockey-stick domain is capped at 100).
    #[arg(
        long = "identities",
        visible_alias = "bound",
        default_value_t = 100,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    identities: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SequenceArgs {
    /// Which sequence to print.
    #[arg(value_enum, ignore_case = true)]
    name: SequenceName,
    /// Inclusive index range like "0..8", or a single index.
    range: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bernoulli/Euler table cache file, validated before use.
    #[arg(long, env = "CLF_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct CacheWriteArgs {
    /// Destination file.
    path: PathBuf,
    /// Number of entries per table (indices 0 through entries-1).
    #[arg(long, default_value_t = 1000)]
    entries: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SequenceName {
    /// Catalan-Larcombe-French numbers P_n.
    P,
    /// S_n = P_n / 2^n.
    S,
    /// Bernoulli numbers (exact rationals).
    B,
    /// Euler numbers.
    E,
    /// Harmonic numbers (exact rationals).
    H,
}

impl SequenceName {
    fn letter(self) -> &'static str {
        match self {
            SequenceName::P => "P",
            SequenceName::S => "S",
            SequenceName::B => "B",
            SequenceName::E => "E",
            SequenceName::H => "H",
        }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get().min(8))
        .unwrap_or(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Identities(args) => cmd_identities(args),
        Command::Sequence(args) => cmd_sequence(args),
        Command::CacheWrite(args) => cmd_cache_write(args),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, CliError> {
    let checks = parse_checks(&args.checks)?;
    let primes = parse_primes(&args.primes)?;
    let seed = load_seed(args.cache.as_deref())?;

    let started = Instant::now();
    let rows = runner::run_verify(&checks, &primes, args.workers, seed.as_ref());
    let elapsed = started.elapsed();

    let mut out_rows = Vec::with_capacity(rows.len());
    let mut failed = 0usize;
    let mut errored = 0usize;
    for row in &rows {
        match row {
            Ok(rep) => {
                if !rep.pass {
                    failed += 1;
                }
                out_rows.push(VerifyRow::from_report(rep));
            }
            Err(err) => {
                errored += 1;
                eprintln!("error: {err}");
            }
        }
    }
    report::write_verify(&out_rows, args.format)?;
    eprintln!(
        "verified {} pairs in {:.2?}: {} passed, {failed} failed, {errored} errored",
        rows.len(),
        elapsed,
        rows.len() - failed - errored,
    );
    Ok(failed == 0 && errored == 0)
}

fn cmd_identities(args: IdentityArgs) -> Result<bool, CliError> {
    let cache = SequenceCache::new();
    let sweep = run_identities(&cache, args.identities);
    let rows: Vec<IdentityRow> = sweep.stats.iter().map(IdentityRow::from_stats).collect();
    report::write_identities(&rows, args.format)?;
    for stat in &sweep.stats {
        if let Some(failure) = &stat.first_failure {
            eprintln!("first counterexample: {failure}");
        }
    }
    Ok(sweep.all_pass())
}

fn cmd_sequence(args: SequenceArgs) -> Result<bool, CliError> {
    let (lo, hi) = parse_range(&args.range)?;
    let seed = load_seed(args.cache.as_deref())?;
    let cache = SequenceCache::new();
    if let Some(seed) = &seed {
        cache
            .adopt_bernoulli(&seed.bernoulli, &[])
            .expect("seed tables were validated at load");
        cache
            .adopt_euler(&seed.euler, &[])
            .expect("seed tables were validated at load");
    }

    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        let value = match args.name {
            SequenceName::P => cache
                .clf(n)
                .expect("the defining sum is integral")
                .to_string(),
            SequenceName::S => zagier_s(&cache, n).to_string(),
            SequenceName::B => cache.bernoulli(n).to_string(),
            SequenceName::E => cache.euler(n).to_string(),
            SequenceName::H => cache.harmonic(n).to_string(),
        };
        rows.push(SequenceRow {
            name: args.name.letter().to_string(),
            n,
            value,
        });
    }
    report::write_sequence(&rows, args.format)?;
    Ok(true)
}

fn cmd_cache_write(args: CacheWriteArgs) -> Result<bool, CliError> {
    if args.entries == 0 {
        return Err(CliError::Usage("--entries must be at least 1".into()));
    }
    cache_file::write(&args.path, args.entries)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.path.display())))?;
    eprintln!(
        "wrote {} entries per table to {}",
        args.entries,
        args.path.display()
    );
    Ok(true)
}

fn load_seed(path: Option<&std::path::Path>) -> Result<Option<cache_file::CacheSeed>, CliError> {
    match path {
        Some(path) => cache_file::load_validated(path)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("cache {}: {e}", path.display()))),
        None => Ok(None),
    }
}

/// Resolve a check selection into registry order, rejecting unknown ids.
fn parse_checks(selection: &str) -> Result<Vec<&'static CongruenceCheck>, CliError> {
    let selection = selection.trim();
    if selection.eq_ignore_ascii_case("all") {
        return Ok(registry().iter().collect());
    }
    let mut wanted: Vec<&'static str> = Vec::new();
    for raw in selection.split(',') {
        let id = raw.trim();
        if id.is_empty() {
            continue;
        }
        let check = find(id).ok_or_else(|| {
            let known: Vec<&str> = registry().iter().map(|c| c.id).collect();
            CliError::Usage(format!(
                "unknown check id {id:?}; known ids: {}",
                known.join(", ")
            ))
        })?;
        if !wanted.contains(&check.id) {
            wanted.push(check.id);
        }
    }
    if wanted.is_empty() {
        return Err(CliError::Usage("no checks selected".into()));
    }
    Ok(registry()
        .iter()
        .filter(|c| wanted.contains(&c.id))
        .collect())
}

/// Either an inclusive bound ("500") or an explicit list ("5,7,11").
fn parse_primes(input: &str) -> Result<Vec<u64>, CliError> {
    let input = input.trim();
    if input.contains(',') {
        let mut primes = Vec::new();
        for raw in input.split(',') {
            let raw = raw.trim();
            if raw.is_empty() {
                continue;
            }
            let p: u64 = raw
                .parse()
                .map_err(|_| CliError::Usage(format!("{raw:?} is not a number")))?;
            if !is_prime(&Integer::from(p)) {
                return Err(CliError::Usage(format!("{p} is not prime")));
            }
            primes.push(p);
        }
        if primes.is_empty() {
            return Err(CliError::Usage("no primes selected".into()));
        }
        Ok(primes)
    } else {
        let bound: u64 = input
            .parse()
            .map_err(|_| CliError::Usage(format!("{input:?} is not a number")))?;
        if bound < 3 {
            return Err(CliError::Usage(format!(
                "prime bound must be at least 3, got {bound}"
            )));
        }
        Ok(primes_up_to(bound))
    }
}

/// "lo..hi" (inclusive, "..=" also accepted) or a single index.
fn parse_range(input: &str) -> Result<(u64, u64), CliError> {
    let input = input.trim();
    let parse_end = |s: &str| -> Result<u64, CliError> {
        s.parse()
            .map_err(|_| CliError::Usage(format!("{input:?} is not an index range")))
    };
    if let Some((a, b)) = input.split_once("..") {
        let lo = parse_end(a)?;
        let hi = parse_end(b.strip_prefix('=').unwrap_or(b))?;
        if hi < lo {
            return Err(CliError::Usage(format!("empty range {input:?}")));
        }
        Ok((lo, hi))
    } else {
        let n = parse_end(input)?;
        Ok((n, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_selection_normalizes_to_registry_order() {
        let picked = parse_checks("C-MORLEY, C-1-1,C-MORLEY").unwrap();
        let ids: Vec<&str> = picked.iter().map(|c| c.id).collect();
        assert_eq!(ids, ["C-1-1", "C-MORLEY"]);
        assert_eq!(parse_checks("all").unwrap().len(), registry().len());
        assert!(parse_checks("C-XX").is_err());
        assert!(parse_checks(" , ").is_err());
    }

    #[test]
    fn prime_spec_bound_and_list() {
        assert_eq!(parse_primes("10").unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(parse_primes("5, 11").unwrap(), vec![5, 11]);
        assert!(parse_primes("2").is_err());
        assert!(parse_primes("5,6").is_err());
        assert!(parse_primes("x").is_err());
    }

    #[test]
    fn range_spec_forms() {
        assert_eq!(parse_range("0..4").unwrap(), (0, 4));
        assert_eq!(parse_range("2..=6").unwrap(), (2, 6));
        assert_eq!(parse_range("9").unwrap(), (9, 9));
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
