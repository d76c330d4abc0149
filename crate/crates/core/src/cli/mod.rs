//! Command-line front end.
//!
//! Exit codes: `0` everything passed, `1` a congruence failed, `2` usage,
//! parse or configuration error, `3` p-adic precision exhausted.

mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::congruence::{self, Backend, Check, CheckOptions, CheckReport, Status};
use crate::exact::{to_decimal_digits, Rational};
use crate::{hypdsl, series, wz};

pub use output::{render, Format, Summary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "supercong", version, about = "Exact verification of Ramanujan-type supercongruences")]
struct Cli {
    /// Plain-text `key=value` file supplying defaults for any flag.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run named checks (or `all`) over a prime range and print each verdict.
    Verify {
        #[arg(required = true, value_name = "CHECK")]
        checks: Vec<String>,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Run checks over a prime range in parallel and write a report file.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "k2")]
        checks: Vec<String>,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// WZ pair verification.
    Wz {
        #[command(subcommand)]
        action: WzAction,
    },
    /// Check user-defined series from a series file.
    Dsl {
        #[arg(long, value_name = "FILE")]
        series_file: PathBuf,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        engine: EngineArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare a partial sum against a rigorous enclosure of its limit.
    Numeric {
        #[arg(value_enum)]
        series: NumericSeries,
        /// Truncation index N (sum over n = 0..=N).
        #[arg(long)]
        terms: Option<u64>,
        #[arg(long)]
        digits: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum WzAction {
    /// Prove the divided certificate identity as a polynomial identity.
    Certify,
    /// Check the WZ relation on the grid 0 ≤ n ≤ nmax, 1 ≤ k ≤ kmax.
    Grid {
        #[arg(long, default_value_t = 30)]
        nmax: i64,
        #[arg(long, default_value_t = 30)]
        kmax: i64,
    },
    /// Check the telescoped identity at the given primes.
    Telescope {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7,11,13,17,19,23")]
        p: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NumericSeries {
    K2,
    G7,
}

#[derive(Args, Debug)]
struct RangeArgs {
    #[arg(long, default_value_t = 3)]
    pmin: u64,
    #[arg(long, default_value_t = 100)]
    pmax: u64,
    /// Extension level for checks on prime powers.
    #[arg(long, default_value_t = 1)]
    r: u32,
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, default_value = "auto", value_parser = parse_backend)]
    backend: Backend,
    #[arg(long, default_value_t = 10)]
    guard_digits: u32,
    /// Largest prime handled exactly by the `auto` backend.
    #[arg(long, default_value_t = 200)]
    exact_threshold: u64,
    #[arg(long, env = "SUPERCONG_WORKERS")]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Report file; standard output if omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Record elapsed times (reports are then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse()
}

impl RangeArgs {
    fn validate(&self) -> Result<(), String> {
        if self.pmin > self.pmax {
            return Err(format!("--pmin {} exceeds --pmax {}", self.pmin, self.pmax));
        }
        if self.r == 0 {
            return Err("--r must be at least 1".into());
        }
        Ok(())
    }
}

impl EngineArgs {
    fn options(&self) -> CheckOptions {
        CheckOptions {
            backend: self.backend,
            exact_threshold: self.exact_threshold,
            guard_digits: self.guard_digits,
        }
    }

    fn workers(&self) -> Result<usize, String> {
        match self.workers {
            Some(0) => Err("--workers must be at least 1".into()),
            Some(w) => Ok(w),
            None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }
}

fn parse_checks(names: &[String]) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend(Check::all());
        } else {
            out.push(name.parse::<Check>()?);
        }
    }
    out.dedup();
    Ok(out)
}

enum Failure {
    Usage(String),
    Precision(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::PrecisionExhausted(_) => Failure::Precision(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Exit code for a finished batch: counterexamples first, then precision
/// failures, then any other evaluation error.
fn batch_exit_code(reports: &[CheckReport]) -> i32 {
    let errored = |pred: fn(&str) -> bool| {
        reports
            .iter()
            .any(|r| r.status == Status::Error && r.note.as_deref().is_some_and(pred))
    };
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if errored(|n| n.starts_with("precision exhausted")) {
        EXIT_PRECISION
    } else if errored(|_| true) {
        EXIT_USAGE
    } else {
        EXIT_OK
    }
}

fn announce_failures(reports: &[CheckReport], err: &mut dyn Write) {
    for r in reports.iter().filter(|r| r.status == Status::Fail) {
        let _ = writeln!(err, "COUNTEREXAMPLE: {r} lhs={} rhs={}", r.lhs_digest, r.rhs_digest);
    }
    for r in reports.iter().filter(|r| r.status == Status::Error) {
        let _ = writeln!(err, "error: {r}");
    }
}

fn write_report(
    reports: &[CheckReport],
    output: &OutputArgs,
    wall_ms: u64,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let text = render(reports, output.format, output.timings, wall_ms)?;
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string())?,
    }
    Ok(())
}

fn summary_line(reports: &[CheckReport]) -> String {
    let s = Summary::of(reports);
    format!(
        "{} records: {} passed, {} failed, {} skipped, {} errors",
        s.total, s.passed, s.failed, s.skipped, s.errors
    )
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure::Usage(e.to_string());
    match cli.command {
        Command::Verify { checks, range, engine } => {
            range.validate()?;
            let checks = parse_checks(&checks)?;
            let reports = congruence::sweep(&checks, range.pmin, range.pmax, range.r, engine.workers()?, &engine.options())?;
            for r in &reports {
                writeln!(out, "{r}").map_err(io)?;
            }
            writeln!(out, "{}", summary_line(&reports)).map_err(io)?;
            announce_failures(&reports, err);
            Ok(batch_exit_code(&reports))
        }
        Command::Sweep { checks, range, engine, output } => {
            range.validate()?;
            let checks = parse_checks(&checks)?;
            let start = Instant::now();
            let reports = congruence::sweep(&checks, range.pmin, range.pmax, range.r, engine.workers()?, &engine.options())?;
            write_report(&reports, &output, start.elapsed().as_millis() as u64, out)?;
            writeln!(err, "{}", summary_line(&reports)).map_err(io)?;
            announce_failures(&reports, err);
            Ok(batch_exit_code(&reports))
        }
        Command::Dsl { series_file, range, engine, output } => {
            range.validate()?;
            let src = std::fs::read_to_string(&series_file)
                .map_err(|e| format!("cannot read {}: {e}", series_file.display()))?;
            let specs = hypdsl::parse_series_file(&src)
                .map_err(|e| format!("{}: {e}", series_file.display()))?;
            let start = Instant::now();
            let reports = hypdsl::sweep_series(&specs, range.pmin, range.pmax, range.r, engine.workers()?, &engine.options())?;
            write_report(&reports, &output, start.elapsed().as_millis() as u64, out)?;
            writeln!(err, "{}", summary_line(&reports)).map_err(io)?;
            announce_failures(&reports, err);
            Ok(batch_exit_code(&reports))
        }
        Command::Wz { action } => match action {
            WzAction::Certify => {
                if wz::certificate_check() {
                    writeln!(out, "certificate identity holds").map_err(io)?;
                    Ok(EXIT_OK)
                } else {
                    writeln!(out, "certificate identity FAILS").map_err(io)?;
                    Ok(EXIT_FAIL)
                }
            }
            WzAction::Grid { nmax, kmax } => {
                if nmax < 0 || kmax < 1 {
                    return Err(Failure::Usage("grid needs --nmax >= 0 and --kmax >= 1".into()));
                }
                match wz::wz_grid_check(nmax, kmax) {
                    Ok(()) => {
                        writeln!(out, "WZ relation holds for 0 <= n <= {nmax}, 1 <= k <= {kmax}").map_err(io)?;
                        Ok(EXIT_OK)
                    }
                    Err(e) => {
                        writeln!(err, "COUNTEREXAMPLE: {e}").map_err(io)?;
                        Ok(EXIT_FAIL)
                    }
                }
            }
            WzAction::Telescope { p } => {
                let mut code = EXIT_OK;
                for prime in p {
                    match wz::telescoping_check(prime) {
                        Ok(t) => writeln!(
                            out,
                            "p={prime}: telescoping holds, S = {} = {} + {}",
                            crate::exact::to_decimal_string(&t.lhs),
                            crate::exact::to_decimal_string(&t.boundary),
                            crate::exact::to_decimal_string(&t.g_sum),
                        )
                        .map_err(io)?,
                        Err(wz::WzError::Domain(q)) => {
                            return Err(Failure::Usage(format!("telescoping needs odd primes, got {q}")))
                        }
                        Err(e) => {
                            writeln!(err, "COUNTEREXAMPLE: {e}").map_err(io)?;
                            code = EXIT_FAIL;
                        }
                    }
                }
                Ok(code)
            }
        },
        Command::Numeric { series: which, terms, digits } => {
            type Bounds = fn(u32) -> (Rational, Rational);
            let (label, sum, bounds): (&str, fn(u64) -> Rational, Bounds) = match which {
                NumericSeries::K2 => ("16/pi", series::s_k2, series::reference_16_over_pi),
                NumericSeries::G7 => ("32/pi^3", series::s_g7, series::reference_32_over_pi_cubed),
            };
            let digits = digits.unwrap_or(match which {
                NumericSeries::K2 => 100,
                NumericSeries::G7 => 60,
            });
            let terms = terms.unwrap_or(match which {
                NumericSeries::K2 => 60,
                NumericSeries::G7 => 40,
            });
            let s = sum(terms);
            let (lo, hi) = bounds(digits);
            let inside = lo <= s && s <= hi;
            writeln!(out, "partial sum (N = {terms}) = {}", to_decimal_digits(&s, digits)).map_err(io)?;
            writeln!(out, "{label} lower bound     = {}", to_decimal_digits(&lo, digits)).map_err(io)?;
            writeln!(out, "{label} upper bound     = {}", to_decimal_digits(&hi, digits)).map_err(io)?;
            writeln!(out, "inside enclosure: {}", if inside { "yes" } else { "no" }).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge(args) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Precision(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PRECISION
        }
    }
}
