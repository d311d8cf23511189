//! Command-line front end: `verify`, `det` and `bench`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{derangement_count, signed_derangement_sum, DERANGEMENT_GUARDRAIL};
use crate::cyclotomic::{CycloContext, CycloElem};
use crate::error::{Error, Result};
use crate::identities::{build, IdentityReport, MatrixKind, OracleOpts};
use crate::numbers::{parse_rational, Integer, Rational};
use crate::suite::{run_suite, select, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "rootdet", version, about = "Exact checks of root-of-unity determinant identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verifiers over a range of n.
    Verify(VerifyArgs),
    /// Print det[x + entries] of one matrix at size n-1.
    Det(DetArgs),
    /// Time the derangement sum against elimination on a at size n-1.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Identity name, comma-separated names, or "all".
    #[arg(long, default_value = "all")]
    pub identity: String,
    /// Inclusive range "a..b" (also "a..=b" or a single "a"); defaults to each identity's grid.
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<usize>>,
    /// Cross-check determinants against the signed derangement sum (n <= 9 unless forced).
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the aggregate report here; report lines still go to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Lift enumeration guardrails.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct DetArgs {
    #[arg(long, value_parser = parse_kind)]
    pub matrix: MatrixKind,
    #[arg(long)]
    pub n: usize,
    /// Rational shift added to every entry, "p/q" or an integer.
    #[arg(long, value_parser = parse_x, allow_hyphen_values = true)]
    pub x: Option<Rational>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub force: bool,
}

fn parse_kind(s: &str) -> std::result::Result<MatrixKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_x(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single `a`.
pub fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid bound {t:?} in range {s:?}"))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

/// Aggregate JSON document written by `verify --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

/// Renders reports in the chosen format.
pub fn render(reports: &[IdentityReport], format: Format) -> Result<String> {
    let summary = Summary::of(reports);
    match format {
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&r.to_string());
                s.push('\n');
            }
            s.push_str(&summary_line(&summary));
            s.push('\n');
            Ok(s)
        }
        Format::Json => {
            let doc = ReportFile {
                reports: reports.to_vec(),
                summary,
            };
            let mut s = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in reports {
                w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
            if reports.is_empty() {
                w.write_record([
                    "identity",
                    "n",
                    "params",
                    "expected",
                    "computed",
                    "passed",
                    "elapsed_seconds",
                    "tool_version",
                ])
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
        }
    }
}

fn summary_line(s: &Summary) -> String {
    format!("{} reports: {} passed, {} failed", s.total, s.passed, s.failed)
}

/// Timings from one `bench` run.
#[derive(Debug, Clone)]
pub struct BenchResult {
    pub n: usize,
    pub det: CycloElem,
    pub derangement_sum: CycloElem,
    pub terms: Integer,
    pub det_seconds: f64,
    pub sum_seconds: f64,
}

impl BenchResult {
    pub fn agree(&self) -> bool {
        self.det == self.derangement_sum
    }

    pub fn speedup(&self) -> f64 {
        self.sum_seconds / self.det_seconds.max(1e-9)
    }
}

/// Times elimination against the derangement sum on a at size n−1.
pub fn bench_a(n: usize, force: bool) -> Result<BenchResult> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n = {n} must be odd and >= 3")));
    }
    if n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    if n - 1 > DERANGEMENT_GUARDRAIL && !force {
        return Err(Error::Guardrail {
            dim: n - 1,
            limit: DERANGEMENT_GUARDRAIL,
        });
    }
    let ctx = CycloContext::new(n)?;
    let m = build(MatrixKind::A, &ctx, n - 1)?;
    let t = Instant::now();
    let det = m.det()?;
    let det_seconds = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let derangement_sum = signed_derangement_sum(&m, force)?;
    let sum_seconds = t.elapsed().as_secs_f64();
    Ok(BenchResult {
        n,
        det,
        derangement_sum,
        terms: derangement_count((n - 1) as u64),
        det_seconds,
        sum_seconds,
    })
}

/// `det[x + entries]` of `kind` at size n−1.
pub fn shifted_det(kind: MatrixKind, n: usize, x: Option<&Rational>) -> Result<CycloElem> {
    let ctx = CycloContext::new(n)?;
    let m = build(kind, &ctx, n - 1)?;
    match x {
        Some(x) => m.add_scalar(&CycloElem::from_rational(&ctx, x)).det(),
        None => m.det(),
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let specs = match select(&args.identity) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let oracle = OracleOpts {
        enabled: args.oracle,
        force: args.force,
    };
    let reports = match run_suite(&specs, args.n.clone(), oracle) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if reports.is_empty() {
        let _ = writeln!(err, "error: no admissible n in the requested range");
        return EXIT_USAGE;
    }
    let summary = Summary::of(&reports);
    let written = match &args.out {
        Some(path) => render(&reports, args.format).and_then(|doc| {
            fs::write(path, doc).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            render(&reports, Format::Text)
        }),
        None => render(&reports, args.format),
    };
    match written {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    }
    if summary.all_passed() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn cmd_det(args: &DetArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match shifted_det(args.matrix, args.n, args.x.as_ref()) {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let r = match bench_a(args.n, args.force) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let m = r.n - 1;
    let _ = writeln!(out, "matrix: a, n = {}, size {m}", r.n);
    let _ = writeln!(out, "det (elimination): {} in {:.6}s", r.det, r.det_seconds);
    let _ = writeln!(
        out,
        "derangement sum: {} over D_{m} = {} terms in {:.6}s",
        r.derangement_sum, r.terms, r.sum_seconds
    );
    let _ = writeln!(out, "speedup: {:.1}x", r.speedup());
    if r.agree() {
        let _ = writeln!(out, "values agree");
        EXIT_OK
    } else {
        let _ = writeln!(err, "values differ");
        EXIT_FAILED
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match &cli.command {
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Det(a) => cmd_det(a, out, err),
        Command::Bench(a) => cmd_bench(a, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::ratio;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..11").unwrap(), 3..=11);
        assert_eq!(parse_range("3..=11").unwrap(), 3..=11);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn shifted_dets() {
        assert_eq!(shifted_det(MatrixKind::A, 3, None).unwrap().to_string(), "-1/3");
        assert_eq!(shifted_det(MatrixKind::B, 3, Some(&ratio(1, 1))).unwrap().to_string(), "8/3");
        assert_eq!(shifted_det(MatrixKind::S19, 5, None).unwrap().to_string(), "125");
        // x-independence of a
        assert_eq!(shifted_det(MatrixKind::A, 5, Some(&ratio(-7, 3))).unwrap().to_string(), "9/5");
        assert!(shifted_det(MatrixKind::A, 1, None).is_err());
    }

    #[test]
    fn bench_guardrail() {
        assert_eq!(
            bench_a(13, false).unwrap_err(),
            Error::Guardrail { dim: 12, limit: DERANGEMENT_GUARDRAIL }
        );
        assert_eq!(bench_a(6, false).unwrap_err(), Error::EvenOrder(6));
        let r = bench_a(7, false).unwrap();
        assert!(r.agree());
        assert_eq!(r.terms, Integer::from(265));
    }

    #[test]
    fn csv_header_mirrors_json_fields() {
        let reports = run_suite(&select("s19").unwrap(), Some(3..=3), OracleOpts::OFF).unwrap();
        let csv = render(&reports, Format::Csv).unwrap();
        assert!(csv.starts_with("identity,n,params,expected,computed,passed,elapsed_seconds,tool_version\n"));
        let empty = render(&[], Format::Csv).unwrap();
        assert_eq!(empty.lines().count(), 1);
    }
}
