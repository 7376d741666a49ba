//! The `fibsum` command line.
//!
//! Exit codes: `0` when everything ran and every check held, `1` when a
//! verification failed, `2` for usage errors and violated preconditions.

mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bfile;
use crate::error::Error;
use crate::fibcore::{fib, fib_mod, lucas, sum_fib, sum_fib_mod, Integer};
use crate::json::{bigint, to_line};
use crate::pisano::{pisano_fib_even, PisanoCache};
use crate::primes::{primes_up_to, qualifying_primes, sp_residue, QualifyingPrime};
use crate::selfsum::{
    is_self_fibonacci, scan_odd_self_summable, scan_self_summable, theorem_family,
};

pub use verify::{run_suite, Suite, SuiteOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fibsum",
    version,
    about = "Fibonacci sums, Pisano periods and self-summable Fibonacci numbers"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    JsonLines,
    BFile,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// F(n), or F(n) mod m when a modulus is given.
    Fib(ValueArgs),
    /// Lucas number L(n).
    Lucas(ValueArgs),
    /// S(n) = F(1) + ... + F(n), or S(n) mod m.
    Sum(ValueArgs),
    /// Pisano period of a modulus, or of F(n) with --fib.
    Pisano {
        modulus: Option<BigInt>,
        /// Sweep moduli 1..=N.
        #[arg(long)]
        limit: Option<BigInt>,
        /// Treat the argument as an even index n and compute π(F(n)).
        #[arg(long)]
        fib: bool,
        /// Pisano cache file (read, then updated).
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
    /// Qualifying primes up to a limit, or S(p) mod p residue reports.
    Primes {
        #[arg(long, default_value = "100")]
        limit: BigInt,
        /// Emit S(p) mod p reports for every odd prime instead.
        #[arg(long)]
        residues: bool,
    },
    /// Self-summable k up to a limit.
    Scan {
        #[arg(long, default_value = "106")]
        limit: BigInt,
        /// Only k with F(k) odd.
        #[arg(long)]
        odd: bool,
    },
    /// Certificates for n = 2p and n = 4p.
    Family {
        primes: Vec<BigInt>,
        /// Use every qualifying prime up to N.
        #[arg(long)]
        limit: Option<BigInt>,
    },
    /// Run identity and congruence sweeps.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Upper end of the sweep's main range.
        #[arg(long)]
        limit: Option<BigInt>,
    },
    /// Export a sequence, as a b-file unless --format says otherwise.
    Export {
        #[arg(value_enum)]
        sequence: Sequence,
        #[arg(long)]
        limit: BigInt,
    },
}

#[derive(Debug, Args)]
struct ValueArgs {
    #[arg(allow_negative_numbers = true)]
    n: Option<BigInt>,
    #[arg(allow_negative_numbers = true)]
    modulus: Option<BigInt>,
    /// Emit indices 1..=N instead of a single value.
    #[arg(long)]
    limit: Option<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sequence {
    Fibonacci,
    Lucas,
    Sums,
    Pisano,
    SelfSummable,
    OddSelfSummable,
    SelfFibonacci,
    QualifyingPrimes,
}

/// Failure modes of a command, mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// One output record. `term` is the b-file value; records without one
/// cannot be written as a b-file.
struct Row {
    plain: String,
    json: String,
    term: Option<String>,
}

impl Row {
    fn new<T: Serialize>(plain: impl Into<String>, record: &T, term: Option<String>) -> Self {
        Self {
            plain: plain.into(),
            json: to_line(record),
            term,
        }
    }
}

struct Report {
    rows: Vec<Row>,
    failed: bool,
}

impl From<Vec<Row>> for Report {
    fn from(rows: Vec<Row>) -> Self {
        Self {
            rows,
            failed: false,
        }
    }
}

#[derive(Serialize)]
struct ValueRecord {
    #[serde(serialize_with = "bigint")]
    n: Integer,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_bigint")]
    modulus: Option<Integer>,
    #[serde(serialize_with = "bigint")]
    value: Integer,
}

fn opt_bigint<S: serde::Serializer>(v: &Option<Integer>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => bigint(v, s),
        None => s.serialize_none(),
    }
}

fn to_u64(v: &BigInt, what: &str) -> CliResult<u64> {
    v.to_u64()
        .ok_or_else(|| CliError::Usage(format!("{what} must be in 0..2^64, got {v}")))
}

fn to_i64(v: &BigInt, what: &str) -> CliResult<i64> {
    v.to_i64()
        .ok_or_else(|| CliError::Usage(format!("{what} must fit in 64 bits, got {v}")))
}

/// Parse `argv` (including the program name) and run it.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = out.write_all(rendered.as_bytes());
                return EXIT_OK;
            }
            let _ = err.write_all(rendered.as_bytes());
            return EXIT_USAGE;
        }
    };
    match execute(&cli) {
        Ok(report) => match emit(&cli.output, &report, out) {
            Ok(()) if report.failed => EXIT_FAILED,
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(args: &OutputArgs, report: &Report, stdout: &mut dyn Write) -> CliResult<()> {
    let mut text = String::new();
    match args.format {
        Format::Plain => report.rows.iter().for_each(|r| {
            text.push_str(&r.plain);
            text.push('\n');
        }),
        Format::JsonLines => report.rows.iter().for_each(|r| {
            text.push_str(&r.json);
            text.push('\n');
        }),
        Format::BFile => {
            let terms: Option<Vec<&str>> = report.rows.iter().map(|r| r.term.as_deref()).collect();
            let terms =
                terms.ok_or_else(|| CliError::Usage("this output has no b-file form".into()))?;
            text = bfile::to_string(terms);
        }
    }
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(text.as_bytes())?;
    w.flush()
}

fn execute(cli: &Cli) -> CliResult<Report> {
    let export = |seq, limit: &BigInt| export(seq, to_u64(limit, "limit")?);
    match &cli.command {
        Command::Fib(args) => value_command(args, Kind::Fib),
        Command::Lucas(args) => value_command(args, Kind::Lucas),
        Command::Sum(args) => value_command(args, Kind::Sum),
        Command::Pisano {
            modulus,
            limit,
            fib,
            cache,
        } => pisano_command(modulus.as_ref(), limit.as_ref(), *fib, cache.as_deref()),
        Command::Primes { limit, residues } => primes_command(to_u64(limit, "limit")?, *residues),
        Command::Scan { limit, odd } => {
            let seq = if *odd {
                Sequence::OddSelfSummable
            } else {
                Sequence::SelfSummable
            };
            export(seq, limit)
        }
        Command::Family { primes, limit } => family_command(primes, limit.as_ref()),
        Command::Verify { suite, limit } => {
            let limit = limit.as_ref().map(|l| to_i64(l, "limit")).transpose()?;
            verify_command(*suite, limit)
        }
        Command::Export { sequence, limit } => {
            if cli.output.format == Format::Plain {
                // export defaults to b-file; plain is the global default
                let mut report = export(*sequence, limit)?;
                for (i, row) in report.rows.iter_mut().enumerate() {
                    let term = row.term.take().expect("exported rows carry a term");
                    row.plain = format!("{} {}", i + 1, term);
                }
                Ok(report)
            } else {
                export(*sequence, limit)
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Fib,
    Lucas,
    Sum,
}

fn value_command(args: &ValueArgs, kind: Kind) -> CliResult<Report> {
    match (&args.n, &args.modulus, &args.limit) {
        (None, None, Some(limit)) => {
            let seq = match kind {
                Kind::Fib => Sequence::Fibonacci,
                Kind::Lucas => Sequence::Lucas,
                Kind::Sum => Sequence::Sums,
            };
            export(seq, to_u64(limit, "limit")?)
        }
        (Some(n), None, None) => {
            let value = match kind {
                Kind::Fib => fib(to_i64(n, "n")?),
                Kind::Lucas => lucas(to_i64(n, "n")?),
                Kind::Sum => sum_fib(to_u64(n, "n")?),
            };
            let record = ValueRecord {
                n: n.clone(),
                modulus: None,
                value: value.clone(),
            };
            Ok(vec![Row::new(value.to_string(), &record, None)].into())
        }
        (Some(n), Some(m), None) => {
            let value = match kind {
                Kind::Fib => fib_mod(n, m)?,
                Kind::Sum => sum_fib_mod(n, m)?,
                Kind::Lucas => {
                    return Err(CliError::Usage("lucas takes no modulus".into()));
                }
            };
            let record = ValueRecord {
                n: n.clone(),
                modulus: Some(m.clone()),
                value: value.clone(),
            };
            Ok(vec![Row::new(value.to_string(), &record, None)].into())
        }
        _ => Err(CliError::Usage(
            "give an index (and optionally a modulus), or --limit alone".into(),
        )),
    }
}

fn export(seq: Sequence, limit: u64) -> CliResult<Report> {
    let rows: Vec<Row> = match seq {
        Sequence::Fibonacci | Sequence::Lucas | Sequence::Sums => {
            let limit = i64::try_from(limit)
                .map_err(|_| CliError::Usage(format!("limit too large: {limit}")))?;
            (1..=limit)
                .map(|n| {
                    let value = match seq {
                        Sequence::Fibonacci => fib(n),
                        Sequence::Lucas => lucas(n),
                        _ => sum_fib(n as u64),
                    };
                    let record = ValueRecord {
                        n: BigInt::from(n),
                        modulus: None,
                        value: value.clone(),
                    };
                    Row::new(value.to_string(), &record, Some(value.to_string()))
                })
                .collect()
        }
        Sequence::Pisano => {
            let mut cache = PisanoCache::new();
            return pisano_sweep(limit, &mut cache);
        }
        Sequence::SelfSummable | Sequence::OddSelfSummable => {
            let records = if seq == Sequence::OddSelfSummable {
                scan_odd_self_summable(limit)
            } else {
                scan_self_summable(limit)
            };
            records
                .iter()
                .map(|r| Row::new(r.k.to_string(), r, Some(r.k.to_string())))
                .collect()
        }
        Sequence::SelfFibonacci => (1..=limit)
            .filter(|&n| is_self_fibonacci(n).expect("n >= 1"))
            .map(|n| {
                #[derive(Serialize)]
                struct SelfFibonacci {
                    n: u64,
                }
                Row::new(n.to_string(), &SelfFibonacci { n }, Some(n.to_string()))
            })
            .collect(),
        Sequence::QualifyingPrimes => qualifying_primes(limit)
            .iter()
            .map(|q| Row::new(q.p().to_string(), q, Some(q.p().to_string())))
            .collect(),
    };
    Ok(rows.into())
}

fn pisano_row(record: &crate::pisano::PisanoRecord) -> Row {
    Row::new(
        record.period.to_string(),
        record,
        Some(record.period.to_string()),
    )
}

fn pisano_sweep(limit: u64, cache: &mut PisanoCache) -> CliResult<Report> {
    let rows = (1..=limit)
        .map(|m| cache.get_or_compute(m).map(|r| pisano_row(&r)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(rows.into())
}

fn pisano_command(
    modulus: Option<&BigInt>,
    limit: Option<&BigInt>,
    fib_index: bool,
    cache_path: Option<&Path>,
) -> CliResult<Report> {
    let mut cache = match cache_path {
        Some(p) => PisanoCache::load(p)?,
        None => PisanoCache::new(),
    };
    let report = match (modulus, limit) {
        (Some(m), None) if fib_index => {
            let n = to_u64(m, "n")?;
            let record = match cache.get(&fib(n as i64)) {
                Some(r) => r.clone(),
                None => {
                    let r = pisano_fib_even(n)?;
                    cache.insert(r.clone());
                    r
                }
            };
            let mut row = pisano_row(&record);
            row.term = None;
            vec![row].into()
        }
        (Some(m), None) => {
            let mut row = pisano_row(&cache.get_or_compute(to_u64(m, "modulus")?)?);
            row.term = None;
            vec![row].into()
        }
        (None, Some(limit)) if !fib_index => pisano_sweep(to_u64(limit, "limit")?, &mut cache)?,
        _ => {
            return Err(CliError::Usage(
                "give a modulus (with optional --fib), or --limit alone".into(),
            ))
        }
    };
    if let Some(p) = cache_path {
        if cache.is_dirty() {
            cache.save(p)?;
        }
    }
    Ok(report)
}

fn primes_command(limit: u64, residues: bool) -> CliResult<Report> {
    if !residues {
        return export(Sequence::QualifyingPrimes, limit);
    }
    let mut failed = false;
    let rows = primes_up_to(limit)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| {
            let r = sp_residue(p)?;
            failed |= r.divisible;
            let plain = format!(
                "p={} S_p mod p={} (5/p)={} divisible={}",
                r.p, r.sp_mod_p, r.character5, r.divisible
            );
            Ok(Row::new(plain, &r, Some(r.sp_mod_p.to_string())))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Report { rows, failed })
}

fn family_command(primes: &[BigInt], limit: Option<&BigInt>) -> CliResult<Report> {
    let qualifying: Vec<QualifyingPrime> = match (primes.is_empty(), limit) {
        (false, None) => primes
            .iter()
            .map(|p| Ok(QualifyingPrime::new(to_u64(p, "p")?)?))
            .collect::<CliResult<_>>()?,
        (true, Some(limit)) => qualifying_primes(to_u64(limit, "limit")?),
        _ => {
            return Err(CliError::Usage(
                "give qualifying primes, or --limit alone".into(),
            ))
        }
    };
    let mut failed = false;
    let mut rows = Vec::new();
    for q in &qualifying {
        for c in theorem_family(q) {
            // for n = 2p the residue is forced to 2n - 1
            let ok = c.certifies() && (c.n != 2 * q.p() || c.congruence_residue == 2 * c.n - 1);
            failed |= !ok;
            let plain = format!(
                "p={} n={} F_n odd={} F_n mod 2n={} (F_n+2) mod 2n={} F_n | S(F_n)={}",
                q.p(),
                c.n,
                c.fib_n_odd,
                c.congruence_residue,
                c.reduced_index,
                c.divisibility_holds
            );
            rows.push(Row::new(plain, &c, Some(c.n.to_string())));
        }
    }
    Ok(Report { rows, failed })
}

fn verify_command(suite: Suite, limit: Option<i64>) -> CliResult<Report> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::value_variants()
            .iter()
            .copied()
            .filter(|s| *s != Suite::All)
            .collect()
    } else {
        vec![suite]
    };
    let mut failed = false;
    let mut rows = Vec::new();
    for s in suites {
        let outcome = run_suite(s, limit)?;
        failed |= outcome.failure.is_some();
        rows.push(Row::new(outcome.to_string(), &outcome, None));
    }
    Ok(Report { rows, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("fibsum").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn values() {
        assert_eq!(call(&["fib", "10"]), (0, "55\n".into(), String::new()));
        assert_eq!(call(&["fib", "-2"]).1, "-1\n");
        assert_eq!(call(&["lucas", "10"]).1, "123\n");
        assert_eq!(call(&["sum", "10"]).1, "143\n");
        assert_eq!(call(&["fib", "34", "68"]).1, "67\n");
        assert_eq!(call(&["sum", "7", "7"]).1, "5\n");
        // index far beyond 64 bits on the modular path
        let (code, out, _) = call(&["fib", "100000000000000000000000000000", "1000"]);
        assert_eq!(code, 0);
        assert!(out.trim().parse::<u32>().unwrap() < 1000);
    }

    #[test]
    fn value_json() {
        assert_eq!(
            call(&["fib", "100", "--format", "json-lines"]).1,
            "{\"n\":100,\"value\":354224848179261915075}\n"
        );
        assert_eq!(
            call(&["fib", "10", "1000", "--format", "json-lines"]).1,
            "{\"n\":10,\"modulus\":1000,\"value\":55}\n"
        );
    }

    #[test]
    fn usage_errors() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        assert_eq!(call(&["fib", "10", "0"]).0, 2);
        assert_eq!(call(&["fib", "--bogus"]).0, 2);
        assert_eq!(call(&["fib"]).0, 2);
        assert_eq!(call(&["fib", "10", "--format", "b-file"]).0, 2);
        assert_eq!(call(&["pisano", "7", "--fib"]).0, 2);
        assert_eq!(call(&["family", "13"]).0, 2);
        assert_eq!(call(&["lucas", "3", "5"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn pisano_commands() {
        assert_eq!(call(&["pisano", "4"]).1, "6\n");
        assert_eq!(call(&["pisano", "10", "--fib"]).1, "20\n");
        assert_eq!(
            call(&["pisano", "--limit", "5", "--format", "b-file"]).1,
            "1 1\n2 3\n3 8\n4 6\n5 20\n"
        );
        assert_eq!(
            call(&["pisano", "68", "--format", "json-lines"]).1,
            "{\"modulus\":68,\"period\":36,\"method\":\"iterative-search\"}\n"
        );
    }

    #[test]
    fn scans() {
        let (code, out, _) = call(&["scan", "--odd", "--limit", "274", "--format", "b-file"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 14);
        assert_eq!(*lines.last().unwrap(), "14 274");
        assert_eq!(call(&["scan", "--limit", "11"]).1, "1\n2\n3\n");
        assert_eq!(
            call(&["scan", "--limit", "3", "--format", "json-lines"])
                .1
                .lines()
                .last()
                .unwrap(),
            "{\"k\":3,\"fib_k_odd\":false,\"verdict\":true,\"strategy\":\"direct-big-index\"}"
        );
    }

    #[test]
    fn primes_and_family() {
        assert_eq!(call(&["primes", "--limit", "60"]).1, "17\n23\n47\n53\n");
        let (code, out, _) = call(&["primes", "--limit", "12", "--residues"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("p=3 S_p mod p=1 "));
        let (code, out, _) = call(&["family", "17", "23"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
        assert!(out.lines().next().unwrap().contains("F_n mod 2n=67"));
    }

    #[test]
    fn verify_suites() {
        let (code, out, _) = call(&["verify", "cassini", "--limit", "60"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS cassini"));
    }

    #[test]
    fn export_defaults_to_bfile() {
        assert_eq!(
            call(&["export", "self-fibonacci", "--limit", "30"]).1,
            "1 1\n2 5\n3 12\n4 24\n5 25\n"
        );
        assert_eq!(
            call(&["export", "fibonacci", "--limit", "5", "--format", "plain"]).1,
            "1 1\n2 1\n3 2\n4 3\n5 5\n"
        );
    }
}
